"""The two Cremona involutions as fan symmetries, checked against their closed forms.

Run: python demos/02_symmetries.py
"""
from toricgw.intersection import PERM_CUBE, PERM_P3, P3_SIDE, CurveClass, anticanonical_degree
from toricgw.toric_symmetry import (
    XI_MATRIX, ZETA_MATRIX, closed_form_matrix, cremona_cube, cremona_p3,
    tau_pushforward, xi_matrix, zeta_matrix,
)

for name, matrix, sym, fn, basis in (("xi", XI_MATRIX, xi_matrix(), cremona_p3, PERM_P3),
                                     ("zeta", ZETA_MATRIX, zeta_matrix(), cremona_cube, PERM_CUBE)):
    same = sym.pushforward == closed_form_matrix(fn, basis)
    print(f"{name}: matrix {matrix}, transport equals closed form: {same}")

# a line maps to a twisted cubic through the four points
line = CurveClass.from_parts(P3_SIDE(4), 1)
print(line, "->", cremona_p3(line))

beta = CurveClass.from_parts(P3_SIDE(6), 5, (2, 2, 1, 1, 1, 1))
image = cremona_p3(beta)
print(beta, "->", image, "| -K.beta:", anticanonical_degree(beta), anticanonical_degree(image))

# the identification of the two models on the basis curves
for name in ("h", "e1", "e4", "f12"):
    print(f"tau({name}) =", tau_pushforward(CurveClass.unit(PERM_P3, name)))
