"""Reduce the three-point count of (1,1,1)-curves on (P^1)^3 to the twisted cubic table entry.

Run: python demos/03_example_chain.py
"""
from toricgw.gw_calculus import GWQuery, excess, reduce, replay, vdim
from toricgw.intersection import CUBE_SIDE, P3_SIDE, CurveClass

query = GWQuery.of(CurveClass.from_parts(CUBE_SIDE(0), (1, 1, 1)), genus=0, points=3)
print("query:", query.beta, "with", query.point_insertions, "points, vdim", vdim(query), "excess", excess(query))

trace = reduce(query)
for step in trace.steps:
    print(f"  {step.rule:<17} {step.before.beta}  ->  {step.after.beta}  [{step.status}]")
print("outcome:", trace.outcome, "| replays:", replay(trace))

# two Cremona moves bring 7h down to the same cubic
trace = reduce(GWQuery.of(CurveClass.from_parts(P3_SIDE(8), 7, (2, 2, 2, 2, 2, 2, 1, 1))))
print([s.rule for s in trace.steps], trace.outcome)
