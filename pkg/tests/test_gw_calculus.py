import warnings

import pytest
from hypothesis import given, settings, strategies as st

from toricgw.errors import BasisModelMismatch, HypothesisWarning, NonVdimZero, ParseError
from toricgw.gw_calculus import (
    BaseTable, GWQuery, Unresolved, Value, apply_rule, excess, normal_form,
    point_descent, reduce, replay, theorem1_inverse, theorem1_map, theorem2_guard,
    theorem3_guard, theorem4_guard, theorem4_map, vdim,
)
from toricgw.intersection import CUBE_SIDE, P3_SIDE, CurveClass
from toricgw.toric_symmetry import cremona_p3


def p3(d, *a):
    return CurveClass.from_parts(P3_SIDE(len(a)), d, a)


def cube(d, *a):
    return CurveClass.from_parts(CUBE_SIDE(len(a)), d, a)


def classes(basis, lo=-10, hi=10):
    return st.lists(st.integers(lo, hi), min_size=basis.rank, max_size=basis.rank).map(
        lambda c: CurveClass(basis, tuple(c)))


EXAMPLE_QUERY = GWQuery.of(cube((1, 1, 1)), genus=0, points=3)


# -- virtual dimension -------------------------------------------------------

def test_vdim_of_twisted_cubic_class():
    assert vdim(GWQuery.of(p3(3, 1, 1, 1, 1, 1, 1))) == 0


def test_line_through_two_points():
    q = GWQuery.of(p3(1), points=2)
    assert vdim(q) == 6
    assert excess(q) == 0  # 4d - 2n


def test_vdim_ignores_genus():
    beta = cube((1, 1, 1), 1, 0, 1, 1)
    assert vdim(GWQuery.of(beta, genus=1)) == vdim(GWQuery.of(beta, genus=5)) == 0


def test_descent_preserves_excess():
    q = GWQuery.of(cube((2, 1, 1)), points=4)
    assert excess(q) == excess(point_descent(q)) == 0


def test_query_checks_model():
    with pytest.raises(BasisModelMismatch):
        GWQuery(P3_SIDE(2), 0, p3(1, 1))


# -- correspondences ------------------------------------------------------

def test_theorem1_on_the_example_class():
    assert theorem1_map(p3(3, 1, 1, 1, 1, 1, 1)) == cube((1, 1, 1), 1, 0, 1, 1)
    assert str(theorem1_map(p3(3, 1, 1, 1, 1, 1, 1))) == "h1 + h2 + h3 - e1 - e3 - e4"


def test_theorem1_mechanical_fixture():
    # h - e1 - e2: padded to four points, a~2 = d - a1 - a2 - a3 = -1
    with pytest.warns(HypothesisWarning):
        out = theorem1_map(p3(1, 1, 1))
    assert out == cube((0, 0, -1), 0, -1)


def test_theorem1_warns_only_outside_hypotheses():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        theorem1_map(p3(3, 1, 1, 1, 1, 1, 1))
    with pytest.warns(HypothesisWarning):
        theorem1_map(p3(2, 1, 1, 1, 1))


def test_theorem4_fixture():
    assert theorem4_map(cube((0, 0, 1), 0, 0, 1, 0)) == cube((1, 1, 1), 1, 1, 0, 1)


def test_theorem4_needs_four_points():
    with pytest.raises(BasisModelMismatch):
        theorem4_map(cube((1, 1, 1), 1, 1, 1))
    with pytest.raises(BasisModelMismatch):
        theorem1_map(cube((1, 1, 1)))


def test_guards():
    assert theorem2_guard(p3(3, 1, 1, 1, 1, 1, 1))
    g = theorem2_guard(p3(2, 1, 1, 1, 1))
    assert not g and "i > 4" in g.failures[0]
    assert theorem3_guard(cube((1, 1, 1), 1, 0, 1, 1))
    assert not theorem3_guard(cube((1, 1, 1), 1, 1))
    assert not theorem4_guard(cube((1, 1, 1), 1, 1, 0, 0))


def test_point_descent_examples():
    q = point_descent(EXAMPLE_QUERY)
    assert q.point_insertions == 0 and q.beta == cube((1, 1, 1), 1, 1, 1)
    q = point_descent(GWQuery.of(p3(3), points=6))
    assert q.beta == p3(3, 1, 1, 1, 1, 1, 1)
    q0 = GWQuery.of(p3(1, 1, 1))
    assert point_descent(q0) is q0


def test_cremona_conjugate_is_the_antipodal_swap_not_theorem4():
    # theorem1 o cremona o theorem1^-1 swaps a~1 and a~2 and fixes the rest
    beta = cube((1, 2, 3), 4, 5, 6, 7)
    conj = theorem1_map(cremona_p3(theorem1_inverse(beta, warn=False)), warn=False)
    assert conj == cube((1, 2, 3), 5, 4, 6, 7)
    assert conj != theorem4_map(beta, warn=False)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 6).flatmap(lambda k: classes(CUBE_SIDE(k))))
def test_cremona_conjugate_property(beta):
    conj = theorem1_map(cremona_p3(theorem1_inverse(beta, warn=False)), warn=False)
    a = list(beta.a) + [0] * max(0, 2 - len(beta.a))
    a[0], a[1] = a[1], a[0]
    assert conj == CurveClass.from_parts(conj.basis, beta.d, a)


@settings(max_examples=200, deadline=None)
@given(classes(CUBE_SIDE(4)))
def test_theorem4_is_an_involution(beta):
    assert theorem4_map(theorem4_map(beta, warn=False), warn=False) == beta


@settings(max_examples=200, deadline=None)
@given(classes(CUBE_SIDE(4)))
def test_theorem4_preserves_vdim(beta):
    image = theorem4_map(beta, warn=False)
    assert sum(image.d) - sum(image.a) == sum(beta.d) - sum(beta.a)
    assert vdim(GWQuery.of(image)) == vdim(GWQuery.of(beta))


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 9).flatmap(lambda k: classes(P3_SIDE(k))))
def test_theorem1_round_trip_and_vdim(beta):
    image = theorem1_map(beta, warn=False)
    assert theorem1_inverse(image, warn=False) == beta
    # vdim zero goes to vdim zero, and in general the two agree
    assert vdim(GWQuery.of(image)) == vdim(GWQuery.of(beta))
    if 2 * beta.d == sum(beta.a):
        assert sum(image.d) == sum(image.a)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.integers(0, 3), st.integers(0, 4))
def test_genus_is_never_modified(k, genus, n):
    q = GWQuery(P3_SIDE(k), genus, CurveClass.zero(P3_SIDE(k)), n)
    assert point_descent(q).genus == genus


# -- base table -----------------------------------------------------------

def test_default_table():
    table = BaseTable.default()
    assert len(table) == 2
    assert table.lookup(GWQuery.of(p3(1), points=2)).value == 1
    assert table.lookup(GWQuery.of(p3(3, 1, 1, 1, 1, 1, 1))).provenance == "published"
    assert table.lookup(GWQuery.of(p3(3, 0, 1, 1, 1, 1, 1, 1))).value == 1
    assert table.lookup(GWQuery.of(p3(3, 1, 1, 1, 1, 1), points=1)).value == 1
    assert table.lookup(GWQuery.of(p3(3, 1, 1, 1, 1, 1, 1), genus=1)) is None


def test_normal_form_sorts_points():
    assert normal_form("P3", 0, 2, (0, 1, 2, 1)) == ("P3", 0, (2,), (2, 1, 1))
    assert normal_form("CUBE", 0, (1, 3, 2), (), 2) == ("CUBE", 0, (3, 2, 1), (1, 1))


@pytest.mark.parametrize("line, column", [
    ("XX 0 d=1 1 trivial", 1),
    ("P3 0 d=1 1 guessed", 12),
    ("P3 0 q=1 1 trivial", 6),
    ("P3 0 d=1;a=1,x 1 trivial", 14),
    ("P3 -1 d=1 1 trivial", 4),
])
def test_table_parse_errors(line, column):
    with pytest.raises(ParseError) as info:
        BaseTable.from_text(line)
    assert info.value.column == column


def test_table_rejects_conflicts():
    with pytest.raises(ParseError):
        BaseTable.from_text("P3 0 d=1;n=2 1 trivial\nP3 0 d=1;a=1,1 2 derived")


def test_table_file(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# comment\nCUBE 0 d=1,1,1;n=3 1 derived  # twisted cubic\n")
    table = BaseTable.from_file(path)
    trace = reduce(EXAMPLE_QUERY, table)
    assert trace.outcome == Value(1, "derived")
    assert [s.rule for s in trace.steps] == ["point_descent", "table_lookup"]


# -- reduction ------------------------------------------------------------

def test_example_chain():
    trace = reduce(EXAMPLE_QUERY)
    assert trace.outcome.value == 1
    rules = [s.rule for s in trace.steps]
    assert rules == ["point_descent", "relabel", "theorem1_inverse", "table_lookup"]
    assert trace.steps[1].after.beta == cube((1, 1, 1), 1, 0, 1, 1)
    assert trace.steps[2].after.beta == p3(3, 1, 1, 1, 1, 1, 1)
    assert all(s.status == "ok" for s in trace.steps)
    assert replay(trace)


def test_line_through_two_points_reduces():
    trace = reduce(GWQuery.of(p3(1), points=2))
    assert trace.outcome == Value(1, "trivial")


def test_nonzero_vdim_is_refused():
    with pytest.raises(NonVdimZero):
        reduce(GWQuery.of(p3(1)))


def test_cremona_reduction_reaches_the_table():
    # 5h - 2e1 - 2e2 - e3 - ... - e8 goes to 3h - e3 - ... - e8
    beta = p3(5, 2, 2, 1, 1, 1, 1, 1, 1)
    trace = reduce(GWQuery.of(beta))
    assert [s.rule for s in trace.steps] == ["cremona_p3", "table_lookup"]
    assert trace.outcome == Value(1, "published")
    assert replay(trace)


def test_double_cremona_reduction():
    trace = reduce(GWQuery.of(p3(7, 2, 2, 2, 2, 2, 2, 1, 1)))
    assert [s.rule for s in trace.steps].count("cremona_p3") == 2
    assert trace.outcome.value == 1


def test_cremona_is_skipped_when_degree_goes_negative():
    # 5h - 2e1 - ... - 2e4 - e5 - e6 would map to degree -1
    trace = reduce(GWQuery.of(p3(5, 2, 2, 2, 2, 1, 1)))
    assert "cremona_p3" not in [s.rule for s in trace.steps]
    assert isinstance(trace.outcome, Unresolved)


def test_unresolved_is_reported():
    trace = reduce(GWQuery.of(p3(2, 1, 1, 1, 1)))
    assert isinstance(trace.outcome, Unresolved)
    assert not trace.resolved


def test_formal_steps_are_marked():
    # a single blown-up point: no a~_i with i > 2 survives the relabelling
    trace = reduce(GWQuery.of(cube((1, 1, 0), 2)))
    statuses = {s.rule: s.status for s in trace.steps}
    assert statuses.get("theorem1_inverse") == "formal"


def test_replay_detects_tampering():
    trace = reduce(EXAMPLE_QUERY)
    step = trace.steps[2]
    forged = type(step)(step.rule, step.before, step.before.with_beta(p3(3, 1, 1, 1, 1, 1, 2)))
    bad = type(trace)(trace.query, trace.steps[:2] + (forged,) + trace.steps[3:], trace.outcome)
    assert not replay(bad)


def test_apply_rule_unknown():
    with pytest.raises(ValueError):
        apply_rule("magic", EXAMPLE_QUERY, {})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3).flatmap(lambda k: classes(P3_SIDE(k), 0, 4)), st.integers(0, 6))
def test_reduce_is_deterministic_and_replays(beta, n):
    q = GWQuery.of(beta, points=n)
    if excess(q) != 0:
        with pytest.raises(NonVdimZero):
            reduce(q)
        return
    t1, t2 = reduce(q), reduce(q)
    assert t1 == t2
    assert replay(t1)
    assert all(s.before.genus == q.genus for s in t1.steps)
