"""Stationary Gromov-Witten queries on blowups of P^3 and (P^1)^3.

Nothing here computes an invariant from first principles.  The module knows
how the coefficients of a curve class change under the known equivalences
(point descent, the P^3 <-> (P^1)^3 correspondence, the cube symmetry and the
Cremona involution), and :func:`reduce` chains them until the query matches an
entry of a :class:`BaseTable`.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .errors import BasisModelMismatch, HypothesisWarning, NonVdimZero, ParseError
from .intersection import (
    CUBE_SIDE, P3_SIDE, ClassBasis, CurveClass, anticanonical_degree,
)
from .toric_symmetry import cremona_p3

__all__ = [
    "GWQuery", "Guard", "TableEntry", "BaseTable", "ReductionStep", "Value",
    "Unresolved", "ReductionTrace", "vdim", "excess", "theorem1_map",
    "theorem1_inverse", "theorem4_map", "point_descent", "theorem1_guard",
    "theorem2_guard", "theorem3_guard", "theorem4_guard", "reduce", "replay",
    "apply_rule", "normal_form",
]


@dataclass(frozen=True)
class GWQuery:
    """``<p^n>_{g, beta}`` on the model ``beta.basis``."""
    model: ClassBasis
    genus: int
    beta: CurveClass
    point_insertions: int = 0

    def __post_init__(self):
        if self.beta.basis != self.model:
            raise BasisModelMismatch(f"class on {self.beta.basis.tag} used on model {self.model.tag}")
        if self.genus < 0 or self.point_insertions < 0:
            raise ValueError("genus and number of insertions must be nonnegative")

    @classmethod
    def of(cls, beta: CurveClass, genus: int = 0, points: int = 0) -> "GWQuery":
        return cls(beta.basis, genus, beta, points)

    def with_beta(self, beta: CurveClass) -> "GWQuery":
        return GWQuery(beta.basis, self.genus, beta, self.point_insertions)

    def __str__(self):
        ins = f"p^{self.point_insertions}" if self.point_insertions else ""
        return f"<{ins}>_{{{self.genus}, {self.beta}}} on {self.model.tag}"


def vdim(q: GWQuery) -> int:
    """Virtual dimension ``-K.beta + n`` of the moduli space of stable maps.

    On a threefold the ``(dim - 3)(1 - g)`` term vanishes, so genus drops out.
    """
    return anticanonical_degree(q.beta) + q.point_insertions


def excess(q: GWQuery) -> int:
    """``vdim`` minus the codimension of the insertions (3 per point class).

    The invariant can only be nonzero when this is zero.
    """
    return vdim(q) - 3 * q.point_insertions


# ---------------------------------------------------------------------------
# hypotheses

@dataclass(frozen=True)
class Guard:
    """Outcome of a side-condition check; truthy iff every condition holds."""
    name: str
    ok: bool
    failures: Tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def _guard(name, conditions):
    failures = tuple(msg for cond, msg in conditions if not cond)
    return Guard(name, not failures, failures)


def _require(beta: CurveClass, side: str, lines_ok: bool = False):
    if not isinstance(beta, CurveClass) or beta.basis.side != side or (beta.basis.lines and not lines_ok):
        got = beta.basis.tag if isinstance(beta, CurveClass) else type(beta).__name__
        raise BasisModelMismatch(f"expected a class on {side}_SIDE(k), got {got}")


def theorem1_guard(beta: CurveClass) -> Guard:
    """Side conditions for crossing from the P^3 side to the cube side."""
    _require(beta, "P3")
    a = beta.a
    return _guard("theorem1", [
        (2 * beta.d == sum(a), f"vdim is not zero (2d = {2 * beta.d}, sum a = {sum(a)})"),
        (any(a[4:]), "no nonzero a_i with i > 4"),
    ])


def theorem2_guard(beta: CurveClass) -> Guard:
    """``2d = sum a_i`` and some ``a_i != 0`` with ``i > 4`` (P^3 side)."""
    _require(beta, "P3")
    a = beta.a
    return _guard("theorem2", [
        (2 * beta.d == sum(a), f"2d = {2 * beta.d} differs from sum a = {sum(a)}"),
        (any(a[4:]), "all a_i with i > 4 vanish"),
    ])


def theorem3_guard(beta: CurveClass) -> Guard:
    """``sum d_j = sum a_i`` and some ``a_i != 0`` with ``i > 2`` (cube side)."""
    _require(beta, "CUBE")
    a = beta.a
    return _guard("theorem3", [
        (sum(beta.d) == sum(a), f"sum d = {sum(beta.d)} differs from sum a = {sum(a)}"),
        (any(a[2:]), "all a_i with i > 2 vanish"),
    ])


def theorem4_guard(beta: CurveClass) -> Guard:
    _require(beta, "CUBE")
    a = beta.a + (0,) * 4
    return _guard("theorem4", [(a[2] != 0 or a[3] != 0, "a_3 = a_4 = 0")])


def _maybe_warn(guard: Guard, warn: bool):
    if warn and not guard:
        warnings.warn(f"{guard.name} hypotheses fail: {'; '.join(guard.failures)}",
                      HypothesisWarning, stacklevel=3)


# ---------------------------------------------------------------------------
# coefficient maps

def theorem1_map(beta: CurveClass, warn: bool = True) -> CurveClass:
    """Carry ``d h - sum a_i e_i`` on P^3 blown up at k points to (P^1)^3 at k-2.

    ``d~_1 = d - a_2 - a_3``, ``d~_2 = d - a_1 - a_3``, ``d~_3 = d - a_1 - a_2``,
    ``a~_1 = a_4``, ``a~_2 = d - a_1 - a_2 - a_3``, ``a~_i = a_{i+2}`` for i >= 3.

    Inputs with fewer than four points are padded with unused points so that
    ``a~_2`` always has a slot; the result lives on ``CUBE_SIDE(max(k, 4) - 2)``.
    A :class:`HypothesisWarning` is emitted when the class is not of
    virtual dimension zero or has no nonzero coefficient beyond the fourth.
    """
    _require(beta, "P3")
    _maybe_warn(theorem1_guard(beta), warn)
    d = beta.d
    a = beta.a + (0,) * max(0, 4 - beta.basis.points)
    a1, a2, a3, a4 = a[:4]
    degrees = (d - a2 - a3, d - a1 - a3, d - a1 - a2)
    points = (a4, d - a1 - a2 - a3) + a[4:]
    return CurveClass.from_parts(CUBE_SIDE(len(points)), degrees, points)


def theorem1_inverse(beta: CurveClass, warn: bool = True) -> CurveClass:
    """Inverse of :func:`theorem1_map`: cube side with k points to P^3 with k+2.

    Classes with fewer than two points are padded with unused ones first.
    """
    _require(beta, "CUBE")
    _maybe_warn(theorem3_guard(beta), warn)
    d1, d2, d3 = beta.d
    a = beta.a + (0,) * max(0, 2 - beta.basis.points)
    t1, t2 = a[:2]
    points = (d1 - t2, d2 - t2, d3 - t2, t1) + a[2:]
    return CurveClass.from_parts(P3_SIDE(len(points)), d1 + d2 + d3 - 2 * t2, points)


def theorem4_map(beta: CurveClass, warn: bool = True) -> CurveClass:
    """The cube symmetry on ``CUBE_SIDE(4)``: swaps ``a~_3, a~_4`` as well."""
    _require(beta, "CUBE")
    if beta.basis.points != 4:
        raise BasisModelMismatch(f"theorem4_map acts on CUBE(k=4), got {beta.basis.tag}")
    _maybe_warn(theorem4_guard(beta), warn)
    (d1, d2, d3), (a1, a2, a3, a4) = beta.d, beta.a
    return CurveClass.from_parts(
        beta.basis,
        (d1 + d3 - a1 - a2, d2 + d3 - a1 - a2, d3),
        (d3 - a2, d3 - a1, a4, a3),
    )


def point_descent(q: GWQuery, count: Optional[int] = None) -> GWQuery:
    """Trade point insertions for blowups: ``<p>_beta = < >_{beta^ - e^}``.

    Each insertion adds a point to the model with coefficient 1.  By default
    all insertions are descended.
    """
    n = q.point_insertions if count is None else count
    if not 0 <= n <= q.point_insertions:
        raise ValueError(f"cannot descend {n} of {q.point_insertions} insertions")
    if n == 0:
        return q
    beta = q.beta
    basis = beta.basis.with_points(beta.basis.points + n)
    d, a, b = beta.basis.split(beta.coefficients)
    new = CurveClass(basis, d + a + (1,) * n + b)
    return GWQuery(basis, q.genus, new, q.point_insertions - n)


def _relabel(beta: CurveClass, order: Tuple[Optional[int], ...]) -> CurveClass:
    """Reorder the point coefficients; ``None`` entries are fresh unused points."""
    a = beta.a
    new_a = tuple(0 if i is None else a[i] for i in order)
    used = sorted(i for i in order if i is not None)
    if used != list(range(len(a))):
        raise ValueError(f"{order} is not a relabelling of {len(a)} points")
    basis = beta.basis.with_points(len(new_a))
    return CurveClass.from_parts(basis, beta.d if basis.side == "CUBE" else (beta.d,), new_a, beta.b)


# ---------------------------------------------------------------------------
# base table

_TABLE_LINE = re.compile(r"^(?P<model>\S+)\s+(?P<genus>\S+)\s+(?P<key>\S+)\s+(?P<value>\S+)\s+(?P<prov>\S+)\s*$")
PROVENANCES = ("published", "trivial", "derived")


def normal_form(side: str, genus: int, degree, a=(), n: int = 0):
    """Lookup key: points are general, so their order and zeros are irrelevant.

    Insertions are folded in as coefficient-1 points, and on the cube side the
    three factors may be permuted.
    """
    d = (degree,) if isinstance(degree, int) else tuple(degree)
    if side == "CUBE":
        d = tuple(sorted(d, reverse=True))
    pts = tuple(sorted((x for x in tuple(a) + (1,) * n if x), reverse=True))
    return side, genus, d, pts


@dataclass(frozen=True)
class TableEntry:
    value: int
    provenance: str
    source: str = ""


@dataclass
class BaseTable:
    """Known invariants, keyed by :func:`normal_form`.

    Text format, one entry per line (``#`` starts a comment)::

        MODEL  GENUS  KEY  VALUE  PROVENANCE

    ``MODEL`` is ``P3`` or ``CUBE``; ``KEY`` is ``;``-separated groups without
    spaces, ``d=...`` (one or three integers), optionally ``a=...`` and
    ``n=...`` (point insertions); ``PROVENANCE`` is one of ``published``,
    ``trivial`` or ``derived``.  Example: ``P3 0 d=3;n=6 1 published``.
    """
    entries: Dict[tuple, TableEntry] = field(default_factory=dict)

    @classmethod
    def from_text(cls, text: str, source: str = "<table>") -> "BaseTable":
        table = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            key, entry = _parse_table_line(line, f"{source}:{lineno}")
            old = table.entries.get(key)
            if old is not None and old.value != entry.value:
                raise ParseError(f"{source}:{lineno}: conflicting value for an existing entry", line)
            table.entries[key] = entry
        return table

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "BaseTable":
        return cls.from_text(Path(path).read_text(), str(path))

    @classmethod
    def default(cls) -> "BaseTable":
        text = resources.files("toricgw").joinpath("data/base_table.txt").read_text()
        return cls.from_text(text, "base_table.txt")

    def lookup(self, q: GWQuery) -> Optional[TableEntry]:
        beta = q.beta
        if any(beta.b):
            return None
        key = normal_form(beta.basis.side, q.genus, beta.d, beta.a, q.point_insertions)
        return self.entries.get(key)

    def __len__(self):
        return len(self.entries)


def _ints(text: str, line: str, col: int) -> Tuple[int, ...]:
    out = []
    for tok in text.split(","):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"{tok!r} is not an integer", line, col) from None
        col += len(tok) + 1
    return tuple(out)


def _parse_table_line(line: str, where: str):
    m = _TABLE_LINE.match(line)
    if not m:
        raise ParseError(f"{where}: expected 'MODEL GENUS KEY VALUE PROVENANCE'", line)
    model = m["model"]
    if model not in ("P3", "CUBE"):
        raise ParseError(f"{where}: unknown model {model!r}", line, m.start("model") + 1)
    try:
        genus, value = int(m["genus"]), int(m["value"])
    except ValueError:
        raise ParseError(f"{where}: genus and value must be integers", line) from None
    if genus < 0:
        raise ParseError(f"{where}: negative genus", line, m.start("genus") + 1)
    prov = m["prov"].lower()
    if prov not in PROVENANCES:
        raise ParseError(f"{where}: provenance must be one of {PROVENANCES}", line, m.start("prov") + 1)
    groups: Dict[str, Tuple[int, ...]] = {}
    col = m.start("key")
    for part in m["key"].split(";"):
        name, eq, body = part.partition("=")
        if not eq or name not in ("d", "a", "n") or name in groups:
            raise ParseError(f"{where}: bad key group {part!r}", line, col + 1)
        groups[name] = _ints(body, line, col + len(name) + 2)
        col += len(part) + 1
    if "d" not in groups:
        raise ParseError(f"{where}: key needs a d= group", line, m.start("key") + 1)
    want = 1 if model == "P3" else 3
    if len(groups["d"]) != want:
        raise ParseError(f"{where}: {model} needs {want} degree(s)", line, m.start("key") + 1)
    n = groups.get("n", (0,))
    if len(n) != 1 or n[0] < 0:
        raise ParseError(f"{where}: n= takes one nonnegative integer", line, m.start("key") + 1)
    key = normal_form(model, genus, groups["d"], groups.get("a", ()), n[0])
    return key, TableEntry(value, prov, where)


# ---------------------------------------------------------------------------
# reduction

@dataclass(frozen=True)
class ReductionStep:
    rule: str
    before: GWQuery
    after: GWQuery
    params: Tuple[Tuple[str, object], ...] = ()
    status: str = "ok"
    note: str = ""

    def param(self, name, default=None):
        return dict(self.params).get(name, default)


@dataclass(frozen=True)
class Value:
    value: int
    provenance: str = ""

    def __str__(self):
        return f"Value({self.value})"


@dataclass(frozen=True)
class Unresolved:
    query: GWQuery
    reason: str

    def __str__(self):
        return f"Unresolved({self.query.beta.basis.tag}: {self.query.beta}; {self.reason})"


@dataclass(frozen=True)
class ReductionTrace:
    query: GWQuery
    steps: Tuple[ReductionStep, ...]
    outcome: Union[Value, Unresolved]

    @property
    def resolved(self) -> bool:
        return isinstance(self.outcome, Value)


def apply_rule(rule: str, q: GWQuery, params: dict, table: Optional[BaseTable] = None) -> GWQuery:
    """Re-apply one recorded rule; used by :func:`replay`."""
    if rule == "point_descent":
        return point_descent(q, params.get("count"))
    if rule == "relabel":
        return q.with_beta(_relabel(q.beta, tuple(params["order"])))
    if rule == "theorem1_map":
        return q.with_beta(theorem1_map(q.beta, warn=False))
    if rule == "theorem1_inverse":
        return q.with_beta(theorem1_inverse(q.beta, warn=False))
    if rule == "theorem4_map":
        return q.with_beta(theorem4_map(q.beta, warn=False))
    if rule == "cremona_p3":
        return q.with_beta(cremona_p3(q.beta))
    if rule == "table_lookup":
        entry = (table or BaseTable.default()).lookup(q)
        if entry is None or entry.value != params["value"]:
            raise ValueError("table lookup does not reproduce the recorded value")
        return q
    raise ValueError(f"unknown rule {rule!r}")


def replay(trace: ReductionTrace, table: Optional[BaseTable] = None) -> bool:
    """Re-run every recorded step and compare with the recorded output."""
    cur = trace.query
    for step in trace.steps:
        if step.before != cur:
            return False
        try:
            cur = apply_rule(step.rule, step.before, dict(step.params), table)
        except (ValueError, BasisModelMismatch):
            return False
        if cur != step.after:
            return False
    return True


def _sorted_order(a) -> Tuple[int, ...]:
    return tuple(sorted(range(len(a)), key=lambda i: (-a[i], i)))


class _Reducer:
    def __init__(self, query, table, max_steps):
        self.query, self.table, self.max_steps = query, table, max_steps
        self.steps: List[ReductionStep] = []
        self.seen = set()

    def record(self, rule, q, new, params=(), guard: Optional[Guard] = None, note=""):
        status = "ok" if guard is None or guard else "formal"
        if guard is not None and not guard:
            note = (note + "; " if note else "") + "; ".join(guard.failures)
        self.steps.append(ReductionStep(rule, q, new, tuple(params), status, note))
        return new

    def lookup(self, q):
        entry = self.table.lookup(q)
        if entry is None:
            return None
        self.record("table_lookup", q, q, (("value", entry.value),), note=entry.provenance)
        return Value(entry.value, entry.provenance)

    def canonical(self, q):
        order = _sorted_order(q.beta.a)
        if order == tuple(range(len(order))):
            return q
        return self.record("relabel", q, apply_rule("relabel", q, {"order": order}), (("order", order),))

    def run(self) -> Union[Value, Unresolved]:
        q = self.query
        if excess(q) != 0:
            raise NonVdimZero(f"{q}: vdim {vdim(q)} with {q.point_insertions} point insertion(s) "
                              f"leaves excess {excess(q)}")
        if q.beta.basis.lines:
            return Unresolved(q, "reduction works on the point-blowup models only")
        if q.point_insertions:
            q = self.record("point_descent", q, point_descent(q), (("count", q.point_insertions),))
        while len(self.steps) < self.max_steps:
            hit = self.lookup(q)
            if hit is not None:
                return hit
            nf = normal_form(q.beta.basis.side, q.genus, q.beta.d, q.beta.a)
            if nf in self.seen:
                return Unresolved(q, "no progress")
            self.seen.add(nf)
            degrees = q.beta.d if q.beta.basis.side == "CUBE" else (q.beta.d,)
            if min(degrees) < 0:
                return Unresolved(q, "negative degree and no table entry")
            q = self.step_cube(q) if q.beta.basis.side == "CUBE" else self.step_p3(q)
            if isinstance(q, Unresolved):
                return q
        return Unresolved(q, f"step budget of {self.max_steps} exhausted")

    def step_cube(self, q):
        a = q.beta.a
        if not any(a):
            return Unresolved(q, "no blown-up points to carry across")
        # point 2 of the cube model is left unused, so theorem1_inverse sends
        # the remaining points to general points of P^3
        order = _sorted_order(a)
        order = order[:1] + (None,) + order[1:]
        q = self.record("relabel", q, apply_rule("relabel", q, {"order": order}), (("order", order),))
        new = q.with_beta(theorem1_inverse(q.beta, warn=False))
        return self.record("theorem1_inverse", q, new, guard=theorem3_guard(q.beta))

    def step_p3(self, q):
        q = self.canonical(q)
        beta = q.beta
        if beta.basis.points < 4:
            order = tuple(range(beta.basis.points)) + (None,) * (4 - beta.basis.points)
            q = self.record("relabel", q, apply_rule("relabel", q, {"order": order}), (("order", order),))
            beta = q.beta
        image = cremona_p3(beta)
        if 0 <= image.d < beta.d:
            return self.record("cremona_p3", q, q.with_beta(image), guard=theorem2_guard(beta))
        # last resort: try the cube side if the table knows the image
        image = q.with_beta(theorem1_map(beta, warn=False))
        if self.table.lookup(image) is not None:
            return self.record("theorem1_map", q, image, guard=theorem1_guard(beta))
        return Unresolved(q, "Cremona does not lower the degree and no table entry on either side")


def reduce(q: GWQuery, table: Optional[BaseTable] = None, max_steps: int = 64) -> ReductionTrace:
    """Normalise a stationary query to a base-table entry.

    Strategy (deterministic): descend all point insertions; on the cube side
    relabel points so that point 2 is unused and cross with
    :func:`theorem1_inverse`; on the P^3 side sort the point coefficients and
    apply the Cremona involution while it lowers the degree, falling back to
    :func:`theorem1_map` when the table has the image.  Steps whose
    justification needs side conditions that fail are marked ``formal``.
    """
    table = BaseTable.default() if table is None else table
    r = _Reducer(q, table, max_steps)
    outcome = r.run()
    return ReductionTrace(q, tuple(r.steps), outcome)
