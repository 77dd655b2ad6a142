import pytest
from hypothesis import given, settings, strategies as st

from toricgw import _exact
from toricgw.errors import CenterNotInFan, NonCompleteInput, NonSmoothInput
from toricgw.lattice_fan import (
    LatticeFan, build_cube_fan, build_p3_fan, build_permutohedral_from_cube,
    build_permutohedral_from_p3, completeness_certificate, fan_automorphisms,
    fan_isomorphism, fan_isomorphisms, induced_ray_permutation, star_subdivide,
)

from oracles import permutohedral_fan_oracle


def test_base_fans():
    p3, cube = build_p3_fan(), build_cube_fan()
    assert p3.f_vector == (4, 6, 4)
    assert p3.rays[0] == (-1, -1, -1)
    assert cube.f_vector == (6, 12, 8)
    for fan in (p3, cube):
        assert fan.is_smooth() and fan.is_complete()


@pytest.mark.parametrize("build", [build_permutohedral_from_p3, build_permutohedral_from_cube])
def test_permutohedral_f_vector(build):
    fan = build()
    assert fan.f_vector == (14, 36, 24)
    assert fan.is_smooth()
    cert = completeness_certificate(fan)
    assert cert["complete"] and not cert["problems"]
    assert set(cert["degrees"].values()) == {1}


def test_p3_construction_matches_flag_oracle():
    rays, cones = permutohedral_fan_oracle()
    fan = build_permutohedral_from_p3()
    assert dict(zip(fan.labels, fan.rays)) == rays
    assert {frozenset(fan.cone_labels(c)) for c in fan.max_cones} == cones


def test_both_models_have_the_same_rays():
    a, b = build_permutohedral_from_p3(), build_permutohedral_from_cube()
    assert set(a.rays) == set(b.rays)


def test_star_subdivision_of_point_and_line():
    fan = star_subdivide(build_p3_fan(), ("v1", "v2", "v3"))
    assert fan.f_vector == (5, 9, 6)
    assert fan.rays[-1] == (0, 0, -1)
    assert fan.labels[-1] == "v123"
    line = star_subdivide(build_p3_fan(), ("v1", "v2"))
    assert line.f_vector == (5, 9, 6)
    assert line.centers[-1] == (0, 1)


def test_star_subdivide_rejects_non_cone():
    fan = star_subdivide(build_p3_fan(), ("v1", "v2"))
    with pytest.raises(CenterNotInFan):
        star_subdivide(fan, ("v1", "v2"))
    with pytest.raises(CenterNotInFan):
        star_subdivide(fan, ("v1",))


def test_non_smooth_input_is_rejected():
    rays = ((1, 0, 0), (0, 1, 0), (1, 1, 2), (-1, -1, -1))
    fan = LatticeFan(rays, ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)), ("a", "b", "c", "d"))
    assert not fan.is_smooth()
    with pytest.raises(NonSmoothInput):
        star_subdivide(fan, ("a", "b"))
    with pytest.raises(NonSmoothInput):
        fan_automorphisms(fan)


def test_incomplete_input_is_rejected():
    fan = LatticeFan(build_p3_fan().rays, ((0, 1, 2), (0, 1, 3)), ("v1", "v2", "v3", "v4"))
    assert not completeness_certificate(fan)["complete"]
    with pytest.raises(NonCompleteInput):
        fan_isomorphism(fan, build_p3_fan())


def test_automorphism_groups():
    # S_4 acting on P^3, times the antipodal map on the permutohedron
    assert len(fan_automorphisms(build_p3_fan())) == 24
    assert len(fan_automorphisms(build_cube_fan())) == 48
    autos = fan_automorphisms(build_permutohedral_from_p3())
    assert len(autos) == 48
    assert all(abs(s.det) == 1 for s in autos)


def test_isomorphism_between_models():
    a, b = build_permutohedral_from_p3(), build_permutohedral_from_cube()
    sym = fan_isomorphism(a, b)
    assert sym.matrix == tuple(map(tuple, _exact.identity(3)))
    assert len(fan_isomorphisms(a, b)) == 48
    for s in fan_isomorphisms(a, b):
        assert induced_ray_permutation(s.matrix, a, b) == s.ray_permutation
        back = s.inverse()
        assert induced_ray_permutation(back.matrix, b, a) == back.ray_permutation


def test_p3_and_cube_are_not_isomorphic():
    assert fan_isomorphism(build_p3_fan(), build_cube_fan()) is None


@st.composite
def subdivision_sequences(draw):
    base = draw(st.sampled_from([build_p3_fan, build_cube_fan]))()
    fan = base
    for _ in range(draw(st.integers(0, 5))):
        dim = draw(st.sampled_from([2, 3]))
        cones = fan.cones(dim)
        fan = star_subdivide(fan, draw(st.sampled_from(cones)))
    return fan


@settings(max_examples=40, deadline=None)
@given(subdivision_sequences())
def test_star_subdivisions_stay_smooth_and_complete(fan):
    assert fan.is_smooth()
    assert completeness_certificate(fan)["complete"]
    f0, f1, f2 = fan.f_vector
    # sphere triangulation: Euler characteristic 2 and every edge in two triangles
    assert f0 - f1 + f2 == 2
    assert 2 * f1 == 3 * f2
