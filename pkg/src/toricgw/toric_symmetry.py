"""Cremona symmetries of the permutohedral models and the P^3 <-> (P^1)^3 basis change.

Each map exists twice: as a closed-form coefficient formula (the production
path, cheap enough for property tests) and as a transport of curve classes
along a lattice automorphism of the fan (the oracle).  The tests compare the
two entry by entry.
"""
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import _exact
from .errors import BasisModelMismatch, RayPermutationFailure
from .intersection import (
    CUBE_FACTOR_RAYS, CUBE_LINE_RAYS, CUBE_POINT_RAYS, P3_POINT_RAYS, PERM_CUBE,
    PERM_P3, ClassBasis, CurveClass, curve_from_pairing, curve_pairing_vector,
    model_fan, p3_line_pairs, p3_line_ray,
)
from .lattice_fan import (
    LatticeFan, ToricSymmetry, fan_automorphisms, fan_isomorphism,
    induced_ray_permutation,
)

IntMatrix = Tuple[Tuple[int, ...], ...]

XI_MATRIX = ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
ZETA_MATRIX = ((-1, 0, 0), (-1, 1, 0), (-1, 0, 1))

# Image of each basis curve of the P^3 permutohedral model under the
# identification with the cube model, written with fan labels on both sides:
# e_abc / f_ab are the exceptional classes over the orbit of <v_a, v_b(, v_c)>
# (resp. <u_a, u_b(, u_c)>), and h_ij = H_i.H_j on the cube side with H_1, H_2,
# H_3 the pullbacks of D_u1, D_u3, D_u5.
TAU_TABLE: Dict[str, str] = {
    "h": "h12 + h13 + h23 - e246",
    "e123": "h13 + h23 - e246",
    "e124": "h12 + h23 - e246",
    "e134": "h12 + h13 - e246",
    "e234": "e135",
    "f12": "h23 - e246 + f46",
    "f13": "h13 - e246 + f26",
    "f14": "h12 - e246 + f24",
    "f34": "f35",
    "f24": "f15",
    "f23": "f13",
}

# h_ij above is the curve along the remaining factor; translate to the
# cube basis names (h1 = z direction, h2 = y, h3 = x).
_AXIS = {"u1": "x", "u3": "y", "u5": "z"}
_TABLE_FACTOR_AXIS = {"1": "x", "2": "y", "3": "z"}


def _cube_curve_name(label: str) -> str:
    kind, idx = label[0], label[1:]
    if kind == "h":
        (rest,) = set("123") - set(idx)
        axis = _TABLE_FACTOR_AXIS[rest]
        return "h" + str([_AXIS[u] for u in CUBE_FACTOR_RAYS].index(axis) + 1)
    if kind == "e":
        return "e" + str(CUBE_POINT_RAYS.index("u" + idx) + 1)
    return "f" + str(CUBE_LINE_RAYS.index("u" + idx) + 1)


def _p3_curve_name(label: str) -> str:
    kind, idx = label[0], label[1:]
    if kind == "h":
        return "h"
    if kind == "e":
        return "e" + str(P3_POINT_RAYS.index("v" + idx) + 1)
    for i, j in p3_line_pairs():
        if p3_line_ray(i, j) == "v" + idx:
            return f"f{i}{j}"
    raise KeyError(label)


def _parse_terms(expr: str) -> List[Tuple[int, str]]:
    terms, sign = [], 1
    for tok in expr.split():
        if tok in "+-":
            sign = 1 if tok == "+" else -1
        else:
            terms.append((sign, tok))
    return terms


def _check_side(beta: CurveClass, side: str, min_points: int):
    if not isinstance(beta, CurveClass) or beta.basis.side != side or beta.basis.points < min_points:
        raise BasisModelMismatch(
            f"expected a {side}-side curve class with at least {min_points} points, got {beta.basis.tag if isinstance(beta, CurveClass) else type(beta).__name__}")


# ---------------------------------------------------------------------------
# closed forms

def cremona_p3(beta: CurveClass) -> CurveClass:
    """Resolved Cremona involution of P^3 acting on ``(d; a_1..a_k; b_ij)``.

    Centred on the four torus-fixed points:
    ``d' = 3d - 2(a_1+..+a_4) - sum b``,
    ``a_i' = d - a_j - a_k - a_l - b_ij - b_ik - b_il``, ``b_ij' = b_kl``.
    The ``- sum b`` term comes from ``xi^* H = 3H - 2 sum E - sum F``; without
    it the map is not an involution once line coefficients are nonzero.
    Further points are untouched; without line blowups all ``b`` are zero.
    """
    _check_side(beta, "P3", 4)
    d, a, b = beta.d, list(beta.a), beta.b
    pairs = p3_line_pairs()
    bij = {p: 0 for p in pairs}
    if beta.basis.lines:
        bij = dict(zip(pairs, b))

    def line(i, j):
        return bij[(min(i, j), max(i, j))]

    four = range(1, 5)
    new_a = list(a)
    for i in four:
        others = [j for j in four if j != i]
        new_a[i - 1] = d - sum(a[j - 1] for j in others) - sum(line(i, j) for j in others)
    new_b = []
    if beta.basis.lines:
        for i, j in pairs:
            k, l = (t for t in four if t not in (i, j))
            new_b.append(line(k, l))
    new_d = 3 * d - 2 * sum(a[:4]) - sum(bij.values())
    return CurveClass(beta.basis, (new_d,) + tuple(new_a) + tuple(new_b))


def cremona_cube(beta: CurveClass) -> CurveClass:
    """Cube analogue of Cremona acting on ``(d_1,d_2,d_3; a_1,a_2,..; b_1..b_6)``."""
    _check_side(beta, "CUBE", 2)
    (d1, d2, d3), a = beta.d, beta.a
    a1, a2 = a[:2]
    b1, b2, b3, b4, b5, b6 = beta.b if beta.basis.lines else (0,) * 6
    d = (d1 + d3 - a1 - a2 - b2 - b5, d2 + d3 - a1 - a2 - b1 - b4, d3)
    new_a = (d3 - a2 - b4 - b5, d3 - a1 - b1 - b2) + a[2:]
    new_b = (b5, b4, b3, b2, b1, b6) if beta.basis.lines else ()
    return CurveClass(beta.basis, d + new_a + new_b)


@lru_cache(maxsize=None)
def tau_matrix() -> IntMatrix:
    """Coefficient matrix of the P^3 -> cube identification on the toric bases."""
    by_name = {_p3_curve_name(k): k for k in TAU_TABLE}
    cols = []
    for l, name in enumerate(PERM_P3.curve_names):
        # unit coefficient l is the class sign_l * g_l
        sign = PERM_P3.signs[l]
        label = by_name[name]
        img = CurveClass.zero(PERM_CUBE)
        for c, target in _parse_terms(TAU_TABLE[label]):
            img = img + CurveClass.unit(PERM_CUBE, _cube_curve_name(target), c * sign)
        cols.append(img.coefficients)
    return tuple(map(tuple, _exact.transpose(cols)))


def tau_pushforward(beta: CurveClass) -> CurveClass:
    """Transport a P^3-side permutohedral class (k >= 4 points) to the cube side (k - 2 points).

    Points beyond the four torus-fixed ones are carried along in order.
    """
    _check_side(beta, "P3", 4)
    if not beta.basis.lines:
        raise BasisModelMismatch("tau_pushforward needs the line blowups (use PERM_P3 or with_points)")
    extra = beta.a[4:]
    toric = beta.d, beta.a[:4], beta.b
    src = (toric[0],) + toric[1] + toric[2]
    img = _exact.matvec(tau_matrix(), src)
    target = ClassBasis("CUBE", beta.basis.points - 2, True)
    deg, pts, lines = img[:3], img[3:5], img[5:]
    return CurveClass.from_parts(target, deg, tuple(pts) + tuple(extra), lines)


def tau_inverse(beta: CurveClass) -> CurveClass:
    _check_side(beta, "CUBE", 2)
    if not beta.basis.lines:
        raise BasisModelMismatch("tau_inverse needs the line blowups")
    inv = _exact.inverse_int(tau_matrix())
    src = beta.d + beta.a[:2] + beta.b
    img = _exact.matvec(inv, src)
    target = ClassBasis("P3", beta.basis.points + 2, True)
    return CurveClass.from_parts(target, img[0], tuple(img[1:5]) + beta.a[2:], img[5:])


# ---------------------------------------------------------------------------
# fan transport (oracle)

def _transport(sym: ToricSymmetry, vector: Sequence[int]) -> List[int]:
    out = [0] * len(vector)
    for i, j in enumerate(sym.ray_permutation):
        out[j] = vector[i]
    return out


def symmetry_from_fan_iso(sym: ToricSymmetry, source_basis: ClassBasis,
                          target_basis: ClassBasis) -> IntMatrix:
    """Pushforward matrix on coefficient vectors induced by a fan isomorphism.

    Column ``l`` is the target-basis expression of the image of source unit
    vector ``l``: its pairings with the ray divisors are moved along the ray
    permutation (``D_{M rho} . M_* C = D_rho . C``) and re-expressed through the
    target's dual basis.  Bases must be purely toric.
    """
    for basis, fan in ((source_basis, sym.source), (target_basis, sym.target)):
        if basis.formal_points:
            raise BasisModelMismatch("fan transport only acts on toric bases")
        if set(model_fan(basis).rays) != set(fan.rays):
            raise RayPermutationFailure(f"{basis.tag} does not live on fan {fan.name!r}")
    # re-index through the model fans, whose ray order may differ from sym's fans
    src_fan, tgt_fan = model_fan(source_basis), model_fan(target_basis)
    perm = induced_ray_permutation(sym.matrix, src_fan, tgt_fan)
    if perm is None:
        raise RayPermutationFailure(f"matrix {sym.matrix} does not map {source_basis.tag} onto {target_basis.tag}")
    moved = ToricSymmetry(sym.matrix, perm, src_fan, tgt_fan)
    cols = []
    for l in range(source_basis.rank):
        unit = CurveClass(source_basis, tuple(int(t == l) for t in range(source_basis.rank)))
        image = curve_from_pairing(target_basis, _transport(moved, curve_pairing_vector(unit)))
        cols.append(image.coefficients)
    return tuple(map(tuple, _exact.transpose(cols)))


def _symmetry(matrix, basis: ClassBasis) -> ToricSymmetry:
    fan = model_fan(basis)
    perm = induced_ray_permutation(matrix, fan, fan)
    if perm is None:
        raise RayPermutationFailure(f"{matrix} does not stabilise the rays of {fan.name}")
    sym = ToricSymmetry(tuple(map(tuple, matrix)), perm, fan, fan)
    return ToricSymmetry(sym.matrix, perm, fan, fan, symmetry_from_fan_iso(sym, basis, basis))


def zeta_matrix(matrix=ZETA_MATRIX) -> ToricSymmetry:
    """The cube-side Cremona symmetry of the permutohedral fan with its pushforward."""
    return _symmetry(matrix, PERM_CUBE)


def xi_matrix(matrix=XI_MATRIX) -> ToricSymmetry:
    """The resolved Cremona involution of P^3 (the antipodal map of the fan)."""
    return _symmetry(matrix, PERM_P3)


def tau_symmetry() -> ToricSymmetry:
    """The fan isomorphism between the two permutohedral models, with pushforward."""
    a, b = model_fan(PERM_P3), model_fan(PERM_CUBE)
    sym = fan_isomorphism(a, b)
    if sym is None:
        raise RayPermutationFailure("permutohedral models are not isomorphic")
    return ToricSymmetry(sym.matrix, sym.ray_permutation, a, b,
                         symmetry_from_fan_iso(sym, PERM_P3, PERM_CUBE))


def push(sym: ToricSymmetry, beta: CurveClass, target_basis: ClassBasis) -> CurveClass:
    """Apply a symmetry's pushforward matrix to a class."""
    if sym.pushforward is None:
        raise ValueError("symmetry has no pushforward attached")
    return CurveClass(target_basis, tuple(_exact.matvec(sym.pushforward, beta.coefficients)))


def closed_form_matrix(fn, basis: ClassBasis) -> IntMatrix:
    """Matrix of a linear closed-form coefficient map, read off on unit vectors."""
    cols = [fn(CurveClass(basis, tuple(int(t == l) for t in range(basis.rank)))).coefficients
            for l in range(basis.rank)]
    return tuple(map(tuple, _exact.transpose(cols)))


def is_class_trivial(matrix: IntMatrix, basis: ClassBasis) -> bool:
    """Whether a pushforward only relabels points (and the lines through them).

    Such symmetries fix the degree part and permute the exceptional basis
    vectors; they carry no information beyond a renaming of general points.
    """
    nd = basis.n_degrees
    n = basis.rank
    for l in range(n):
        col = [matrix[k][l] for k in range(n)]
        if l < nd:
            if col != [int(k == l) for k in range(n)]:
                return False
        elif sorted(col) != [0] * (n - 1) + [1] or col.index(1) < nd:
            return False
    return True


def tau_table_check(sym: ToricSymmetry = None) -> dict:
    """Compare the pushforward of a fan isomorphism with the 11-entry basis table.

    If the pushforward differs, composites with class-trivial automorphisms
    of the source fan are tried.  Returns a certificate with per-entry rows.
    """
    sym = tau_symmetry() if sym is None else sym
    pushed = sym.pushforward
    if pushed is None:
        pushed = symmetry_from_fan_iso(sym, PERM_P3, PERM_CUBE)
    expected = tau_matrix()
    fix = _exact.identity(3)
    if pushed != expected:
        fix = None
        for g in fan_automorphisms(model_fan(PERM_P3)):
            gmat = symmetry_from_fan_iso(g, PERM_P3, PERM_P3)
            if is_class_trivial(gmat, PERM_P3) and \
                    tuple(map(tuple, _exact.matmul(pushed, gmat))) == expected:
                pushed, fix = tuple(map(tuple, _exact.matmul(pushed, gmat))), g.matrix
                break
    rows = []
    for l, name in enumerate(PERM_P3.curve_names):
        unit = CurveClass.unit(PERM_P3, name)
        got = CurveClass(PERM_CUBE, tuple(_exact.matvec(pushed, unit.coefficients)))
        want = CurveClass(PERM_CUBE, tuple(_exact.matvec(expected, unit.coefficients)))
        rows.append((name, str(got), str(want), got == want))
    return {
        "matrix": sym.matrix,
        "det": sym.det,
        "composed_with": fix and tuple(map(tuple, fix)),
        "entries": rows,
        "passed": fix is not None and all(r[3] for r in rows),
    }
