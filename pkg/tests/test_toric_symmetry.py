import pytest
from hypothesis import given, settings, strategies as st

from toricgw import _exact
from toricgw.errors import BasisModelMismatch, RayPermutationFailure
from toricgw.intersection import (
    CUBE_SIDE, P3_SIDE, PERM_CUBE, PERM_P3, ClassBasis, CurveClass,
    anticanonical_degree, intersect, model_fan,
    ray_divisor_class,
)
from toricgw.lattice_fan import fan_automorphisms
from toricgw.toric_symmetry import (
    TAU_TABLE, XI_MATRIX, ZETA_MATRIX, _symmetry, closed_form_matrix, cremona_cube,
    cremona_p3, is_class_trivial, push, symmetry_from_fan_iso, tau_inverse, tau_matrix,
    tau_pushforward, tau_symmetry, tau_table_check, xi_matrix, zeta_matrix,
)


def classes(basis, lo=-10, hi=10):
    return st.lists(st.integers(lo, hi), min_size=basis.rank, max_size=basis.rank).map(
        lambda c: CurveClass(basis, tuple(c)))


def p3_classes():
    return st.integers(4, 8).flatmap(lambda k: classes(P3_SIDE(k)))


def cube_classes():
    return st.integers(2, 6).flatmap(lambda k: classes(CUBE_SIDE(k)))


# -- fan transport is the oracle for every closed form -------------------

def test_zeta_is_an_involution_of_the_cube_model():
    sym = zeta_matrix()
    assert _exact.matmul(ZETA_MATRIX, ZETA_MATRIX) == _exact.identity(3)
    fan = model_fan(PERM_CUBE)
    moved = {fan.labels[i]: fan.labels[j] for i, j in enumerate(sym.ray_permutation)}
    assert moved["u1"] == "u246" and moved["u135"] == "u2"
    assert sorted(moved.values()) == sorted(fan.labels)


def test_zeta_transport_equals_cube_closed_form():
    assert zeta_matrix().pushforward == closed_form_matrix(cremona_cube, PERM_CUBE)


def test_antipodal_transport_equals_p3_closed_form():
    assert xi_matrix().pushforward == closed_form_matrix(cremona_p3, PERM_P3)


def test_shear_is_not_a_symmetry():
    with pytest.raises(RayPermutationFailure):
        _symmetry(((1, 1, 0), (0, 1, 0), (0, 0, 1)), PERM_P3)


def test_tau_transport_reproduces_table():
    cert = tau_table_check()
    assert cert["passed"]
    assert len(cert["entries"]) == len(TAU_TABLE) == 11
    assert tau_symmetry().pushforward == tau_matrix()


def test_tau_table_fails_for_a_wrong_isomorphism():
    # composing with the antipodal map gives a genuine isomorphism whose
    # pushforward is not a relabelling of the table
    tau = tau_symmetry()
    xi = [s for s in fan_automorphisms(model_fan(PERM_P3)) if s.matrix == XI_MATRIX][0]
    bad = type(tau)(XI_MATRIX, tuple(tau.ray_permutation[i] for i in xi.ray_permutation),
                    tau.source, tau.target)
    assert not tau_table_check(bad)["passed"]


def test_tau_table_entries():
    h = CurveClass.unit(PERM_P3, "h")
    assert str(tau_pushforward(h)) == "h1 + h2 + h3 - e2"
    assert str(tau_pushforward(CurveClass.unit(PERM_P3, "e4"))) == "e1"


def test_cremona_of_a_line_is_the_twisted_cubic_class():
    h = CurveClass.from_parts(P3_SIDE(4), 1)
    assert cremona_p3(h) == CurveClass.from_parts(P3_SIDE(4), 3, (1, 1, 1, 1))


def test_cremona_pulls_back_hyperplane_to_cubics():
    # d' = H . xi_* beta = xi^* H . beta, so xi^* H = 3H - 2 sum E - sum F
    row = closed_form_matrix(cremona_p3, PERM_P3)[0]
    assert row == (3, -2, -2, -2, -2, -1, -1, -1, -1, -1, -1)


def test_class_trivial_symmetries():
    n = PERM_P3.rank
    assert is_class_trivial(tuple(map(tuple, _exact.identity(n))), PERM_P3)
    assert not is_class_trivial(xi_matrix().pushforward, PERM_P3)
    trivial = 0
    for g in fan_automorphisms(model_fan(PERM_P3)):
        if is_class_trivial(symmetry_from_fan_iso(g, PERM_P3, PERM_P3), PERM_P3):
            trivial += 1
    assert trivial == 24  # the coordinate permutations of P^3


def test_closed_forms_check_their_model():
    with pytest.raises(BasisModelMismatch):
        cremona_p3(CurveClass.zero(P3_SIDE(3)))
    with pytest.raises(BasisModelMismatch):
        cremona_p3(CurveClass.zero(CUBE_SIDE(4)))
    with pytest.raises(BasisModelMismatch):
        cremona_cube(CurveClass.zero(CUBE_SIDE(1)))
    with pytest.raises(BasisModelMismatch):
        tau_pushforward(CurveClass.zero(P3_SIDE(4)))


def test_transport_refuses_formal_points():
    with pytest.raises(BasisModelMismatch):
        symmetry_from_fan_iso(tau_symmetry(), ClassBasis("P3", 5, True), PERM_CUBE)


# -- properties ------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.one_of(classes(PERM_P3), p3_classes(), classes(ClassBasis("P3", 6, True))))
def test_cremona_p3_is_an_involution(beta):
    assert cremona_p3(cremona_p3(beta)) == beta


@settings(max_examples=200, deadline=None)
@given(st.one_of(classes(PERM_CUBE), cube_classes()))
def test_cremona_cube_is_an_involution(beta):
    assert cremona_cube(cremona_cube(beta)) == beta


@settings(max_examples=100, deadline=None)
@given(st.one_of(classes(PERM_P3), p3_classes(), classes(PERM_CUBE), cube_classes()))
def test_cremona_preserves_anticanonical_degree(beta):
    fn = cremona_p3 if beta.basis.side == "P3" else cremona_cube
    assert anticanonical_degree(fn(beta)) == anticanonical_degree(beta)


@settings(max_examples=30, deadline=None)
@given(classes(PERM_P3))
def test_tau_preserves_ray_pairings(beta):
    # tau is the identity on Z^3, so D_rho . beta is the same number on both sides
    image = tau_pushforward(beta)
    src, dst = model_fan(PERM_P3), model_fan(PERM_CUBE)
    for label, v in zip(src.labels, src.rays):
        other = dst.labels[dst.rays.index(v)]
        assert intersect(ray_divisor_class(None, other, PERM_CUBE), image) == \
            intersect(ray_divisor_class(None, label, PERM_P3), beta)
    assert anticanonical_degree(image) == anticanonical_degree(beta)


@settings(max_examples=100, deadline=None)
@given(st.integers(4, 7).flatmap(lambda k: classes(ClassBasis("P3", k, True))))
def test_tau_round_trip(beta):
    assert tau_inverse(tau_pushforward(beta)) == beta


@settings(max_examples=50, deadline=None)
@given(classes(PERM_CUBE))
def test_zeta_push_matches_closed_form_on_classes(beta):
    assert push(zeta_matrix(), beta, PERM_CUBE) == cremona_cube(beta)
