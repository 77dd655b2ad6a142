"""Build the permutohedral threefold from both sides and compare the fans.

Run: python demos/01_permutohedral_fans.py
"""
from toricgw.lattice_fan import (
    build_cube_fan, build_p3_fan, build_permutohedral_from_cube,
    build_permutohedral_from_p3, fan_isomorphism, star_subdivide,
)

p3 = build_p3_fan()
print("P^3:", p3.f_vector)

# the four torus-fixed points one at a time; the builders below also do the lines
fan = p3
for center in (("v1", "v2", "v3"), ("v1", "v2", "v4"), ("v1", "v3", "v4"), ("v2", "v3", "v4")):
    fan = star_subdivide(fan, center)
    print(f"  blow up point {''.join(c[1] for c in center):>4}: f-vector {fan.f_vector}")

from_p3 = build_permutohedral_from_p3()
from_cube = build_permutohedral_from_cube()
print("from P^3:   ", from_p3.f_vector, "smooth" if from_p3.is_smooth() else "singular")
print("from cube:  ", from_cube.f_vector, "smooth" if from_cube.is_smooth() else "singular")
print("cube alone: ", build_cube_fan().f_vector)

iso = fan_isomorphism(from_p3, from_cube)
print("identifying matrix:", iso.matrix)
for i, j in list(enumerate(iso.ray_permutation))[:6]:
    print(f"  {from_p3.labels[i]:>5} -> {from_cube.labels[j]}")
