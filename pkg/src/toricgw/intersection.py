"""Chow bases, intersection numbers and nef checks on smooth complete toric threefolds.

Curve classes are handled internally as *pairing vectors*: the vector of
intersection numbers with every torus-invariant divisor ``D_rho``.  Wall
relations give the pairing vectors of the invariant curves, and triple
intersection numbers of ray divisors follow from them.  The named bases
(``H, E_i, F_ij`` and ``h, e_i, f_ij``, plus the cube-side analogues) are
then *derived* from the blowup history of the fan:

* ``H`` and the ``E`` divisors are pullbacks through the star subdivisions,
* ``h = H.H'`` (products of pulled-back hyperplanes), ``e = -E.E``,
* ``f`` is the fibre curve ``D_line . D_point`` over a torus-fixed point.

Nothing about signs is postulated: ``E.e = -1`` and ``F.f = -1`` come out of
the wall relations and are checked by the test-suite.

Coefficient convention (the one used by all coefficient maps in this
package): a curve class with coefficients ``(d; a; b)`` is
``d h - sum a_i e_i - sum b_ij f_ij``, so that each coefficient equals the
intersection number with the matching divisor basis element.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import _exact
from .errors import BasisModelMismatch, NotAWall
from .lattice_fan import (
    BlowupSequence, Cone, LatticeFan, build_permutohedral_from_cube,
    build_permutohedral_from_p3,
)

# Blown-up toric points, in the order of the exceptional classes e_1, e_2, ...
# With these orders the identity isomorphism of the two permutohedral fans
# restricts to the degree/point map between P^3(k) and (P^1)^3(k-2), and the
# involution [[-1,0,0],[-1,1,0],[-1,0,1]] acts by the cube
# Cremona formula; see tests/test_toric_symmetry.py.
P3_POINT_RAYS = ("v123", "v124", "v134", "v234")
CUBE_POINT_RAYS = ("u135", "u246")
# Cube lines f_1..f_6, in the order of the fibre coefficients b_1..b_6.
CUBE_LINE_RAYS = ("u13", "u15", "u35", "u24", "u26", "u46")
# H_j is the pullback of D_u for the j-th entry: factor 1 is the z direction,
# factor 3 the x direction.
CUBE_FACTOR_RAYS = ("u5", "u3", "u1")

MAX_TORIC_POINTS = {"P3": 4, "CUBE": 2}


def _digits(label: str) -> str:
    return label.lstrip("uv")


def p3_line_pairs() -> Tuple[Tuple[int, int], ...]:
    return tuple(combinations(range(1, 5), 2))


def p3_line_ray(i: int, j: int) -> str:
    """Fan label of the line class f_ij.

    f_ij is the line through the two torus-fixed points *other* than P_i and
    P_j, i.e. the intersection of the two coordinate planes opposite P_i and
    P_j.  This is the labelling under which the Cremona formula
    ``a_i' = d - a_j - a_k - a_l - b_ij - b_ik - b_il`` holds.
    """
    k, l = (t for t in range(1, 5) if t not in (i, j))
    common = set(_digits(P3_POINT_RAYS[k - 1])) & set(_digits(P3_POINT_RAYS[l - 1]))
    return "v" + "".join(sorted(common))


@dataclass(frozen=True)
class ClassBasis:
    """Names and ranks of the Chow bases of one model.

    ``side`` is ``"P3"`` or ``"CUBE"``, ``points`` the number of blown-up
    points and ``lines`` whether the six lines of the permutohedral
    construction are blown up as well.  The first four (P^3) or two (cube)
    points are the torus-fixed ones; further points are general and enter
    only formally.
    """
    side: str
    points: int = 0
    lines: bool = False

    def __post_init__(self):
        if self.side not in MAX_TORIC_POINTS:
            raise ValueError(f"unknown side {self.side!r}")
        if self.points < 0:
            raise ValueError("number of points must be nonnegative")
        if self.lines and self.points < MAX_TORIC_POINTS[self.side]:
            raise ValueError("line blowups need all torus-fixed points blown up first")

    @property
    def n_degrees(self) -> int:
        return 1 if self.side == "P3" else 3

    @property
    def n_lines(self) -> int:
        return 6 if self.lines else 0

    @property
    def rank(self) -> int:
        return self.n_degrees + self.points + self.n_lines

    @property
    def toric_points(self) -> int:
        return min(self.points, MAX_TORIC_POINTS[self.side])

    @property
    def formal_points(self) -> int:
        return self.points - self.toric_points

    def line_names(self) -> Tuple[str, ...]:
        if not self.lines:
            return ()
        if self.side == "P3":
            return tuple(f"{i}{j}" for i, j in p3_line_pairs())
        return tuple(str(i) for i in range(1, 7))

    @property
    def divisor_names(self) -> Tuple[str, ...]:
        degs = ("H",) if self.side == "P3" else ("H1", "H2", "H3")
        return (degs + tuple(f"E{i}" for i in range(1, self.points + 1))
                + tuple("F" + s for s in self.line_names()))

    @property
    def curve_names(self) -> Tuple[str, ...]:
        return tuple(n.lower() for n in self.divisor_names)

    @property
    def signs(self) -> Tuple[int, ...]:
        """+1 for degree coefficients, -1 for exceptional ones."""
        return (1,) * self.n_degrees + (-1,) * (self.points + self.n_lines)

    @property
    def tag(self) -> str:
        extra = ",lines" if self.lines else ""
        return f"{self.side}(k={self.points}{extra})"

    def __str__(self):
        return self.tag

    def split(self, coefficients: Sequence[int]):
        n, k = self.n_degrees, self.points
        c = tuple(coefficients)
        return c[:n], c[n:n + k], c[n + k:]

    def with_points(self, k: int) -> "ClassBasis":
        return ClassBasis(self.side, k, self.lines)


def P3_SIDE(k: int) -> ClassBasis:
    return ClassBasis("P3", k)


def CUBE_SIDE(k: int) -> ClassBasis:
    return ClassBasis("CUBE", k)


PERM_P3 = ClassBasis("P3", 4, True)
PERM_CUBE = ClassBasis("CUBE", 2, True)


# ---------------------------------------------------------------------------
# classes

@dataclass(frozen=True)
class _Class:
    basis: ClassBasis
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) != self.basis.rank:
            raise ValueError(f"{self.basis.tag} needs {self.basis.rank} coefficients, got {len(coeffs)}")

    @classmethod
    def from_parts(cls, basis: ClassBasis, d=(), a=(), b=()):
        d = (d,) if isinstance(d, int) else tuple(d)
        a, b = tuple(a), tuple(b)
        a = a + (0,) * (basis.points - len(a))
        b = b + (0,) * (basis.n_lines - len(b))
        return cls(basis, d + a + b)

    @classmethod
    def zero(cls, basis: ClassBasis):
        return cls(basis, (0,) * basis.rank)

    @classmethod
    def unit(cls, basis: ClassBasis, name: str, value: int = 1):
        names = cls._names(basis)
        c = [0] * basis.rank
        c[names.index(name)] = value
        return cls(basis, tuple(c))

    @property
    def d(self):
        deg = self.basis.split(self.coefficients)[0]
        return deg[0] if self.basis.side == "P3" else deg

    @property
    def a(self) -> Tuple[int, ...]:
        return self.basis.split(self.coefficients)[1]

    @property
    def b(self) -> Tuple[int, ...]:
        return self.basis.split(self.coefficients)[2]

    def _check(self, other):
        if type(other) is not type(self) or other.basis != self.basis:
            raise BasisModelMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.basis, tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.basis, tuple(-x for x in self.coefficients))

    def __mul__(self, n: int):
        return type(self)(self.basis, tuple(n * x for x in self.coefficients))

    __rmul__ = __mul__


def _format(terms) -> str:
    out = " ".join(("- " if c < 0 else "+ ") + ("" if abs(c) == 1 else str(abs(c))) + n
                   for c, n in terms if c)
    if not out:
        return "0"
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


class DivisorClass(_Class):
    """Divisor class; coefficients are taken literally: ``sum c_k B_k``."""

    @staticmethod
    def _names(basis):
        return basis.divisor_names

    def __str__(self):
        return _format(zip(self.coefficients, self.basis.divisor_names))


class CurveClass(_Class):
    """Curve class ``d h - sum a_i e_i - sum b f`` stored as ``(d; a; b)``."""

    @staticmethod
    def _names(basis):
        return basis.curve_names

    @classmethod
    def unit(cls, basis: ClassBasis, name: str, value: int = 1):
        """The class ``value * name``, e.g. ``unit(b, "e1")`` is ``e1``."""
        idx = basis.curve_names.index(name)
        c = [0] * basis.rank
        c[idx] = value * basis.signs[idx]
        return cls(basis, tuple(c))

    def __str__(self):
        signed = (s * c for s, c in zip(self.basis.signs, self.coefficients))
        return _format(zip(signed, self.basis.curve_names))


# ---------------------------------------------------------------------------
# toric part of a model

def model_sequence(basis: ClassBasis) -> BlowupSequence:
    """Blowup sequence realising the toric part of ``basis``."""
    if basis.side == "P3":
        points = P3_POINT_RAYS[:basis.toric_points]
        centers = [tuple("v" + c for c in _digits(p)) for p in points]
        if basis.lines:
            centers += [tuple("v" + c for c in _digits(p3_line_ray(i, j))) for i, j in p3_line_pairs()]
        # fixed construction order for the permutohedral model
        if basis.lines:
            centers = sorted(centers[:4]) + sorted(centers[4:])
        return BlowupSequence("P3", tuple(centers))
    points = CUBE_POINT_RAYS[:basis.toric_points]
    centers = [tuple("u" + c for c in _digits(p)) for p in points]
    if basis.lines:
        centers += [("u1", "u3"), ("u1", "u5"), ("u3", "u5"), ("u2", "u4"), ("u2", "u6"), ("u4", "u6")]
    return BlowupSequence("CUBE", tuple(centers))


@lru_cache(maxsize=None)
def model_fan(basis: ClassBasis) -> LatticeFan:
    """The fan of the toric part of the model (extra general points dropped)."""
    toric = ClassBasis(basis.side, basis.toric_points, basis.lines)
    if toric.lines:
        if toric.side == "P3":
            return build_permutohedral_from_p3()
        return build_permutohedral_from_cube()
    return model_sequence(toric).apply(name=toric.tag)


# ---------------------------------------------------------------------------
# wall relations and triple intersections

def _solve2(u: Sequence[int], v: Sequence[int], w: Sequence[int]) -> Tuple[int, int]:
    """Integers (x, y) with x*u + y*v = w (u, v independent)."""
    for r, s in combinations(range(3), 2):
        det = u[r] * v[s] - u[s] * v[r]
        if det:
            x = _exact.solve([[u[r], v[r]], [u[s], v[s]]], [w[r], w[s]])
            if any(t.denominator != 1 for t in x):
                break
            x, y = int(x[0]), int(x[1])
            if all(x * u[t] + y * v[t] == w[t] for t in range(3)):
                return x, y
            break
    raise ValueError("no integral wall relation (fan not smooth?)")


def wall_relation(fan: LatticeFan, wall: Sequence[int]) -> Tuple[int, ...]:
    """Pairing vector of the invariant curve ``V(wall)``.

    For a wall ``<v_i, v_j>`` between ``<v_i, v_j, v_k>`` and ``<v_i, v_j, v_l>``
    the relation ``v_k + v_l + x v_i + y v_j = 0`` gives ``D_k.C = D_l.C = 1``,
    ``D_i.C = x``, ``D_j.C = y`` and zero elsewhere.
    """
    wall = tuple(sorted(wall))
    adj = fan.max_cones_containing(wall) if len(wall) == 2 else ()
    if len(adj) != 2:
        raise NotAWall(f"{fan.cone_labels(wall)} is not a wall of {fan.name or 'fan'}")
    return _wall_relation_cached(fan, wall)


@lru_cache(maxsize=None)
def _wall_relation_cached(fan: LatticeFan, wall: Cone) -> Tuple[int, ...]:
    i, j = wall
    (k,), (l,) = (tuple(set(m) - set(wall)) for m in fan.max_cones_containing(wall))
    w = [-(a + b) for a, b in zip(fan.rays[k], fan.rays[l])]
    x, y = _solve2(fan.rays[i], fan.rays[j], w)
    out = [0] * len(fan.rays)
    out[k], out[l], out[i], out[j] = 1, 1, x, y
    return tuple(out)


def _dual_vector(fan: LatticeFan, r: int) -> Tuple[int, int, int]:
    """A lattice vector m with <m, v_r> = 1."""
    cone = fan.max_cones_containing((r,))[0]
    g = fan.generator_matrix(cone)
    pos = cone.index(r)
    return tuple(_exact.solve_int(g, [int(t == pos) for t in range(3)]))


@lru_cache(maxsize=None)
def triple_intersections(fan: LatticeFan) -> Dict[Tuple[int, int, int], int]:
    """All nonzero ``D_a.D_b.D_c`` (keys sorted) of a smooth complete fan."""
    n = len(fan.rays)
    cones = set(fan.max_cones)
    walls = set(fan.walls)
    out: Dict[Tuple[int, int, int], int] = {}
    for m in cones:
        out[m] = 1
    for w in walls:
        rel = _wall_relation_cached(fan, w)
        a, c = w
        # D_a^2 D_c = D_a . V(<a, c>)
        if rel[a]:
            out[(a, a, c)] = rel[a]
        if rel[c]:
            out[(a, c, c)] = rel[c]
    for r in range(n):
        m = _dual_vector(fan, r)
        # D_r ~ -sum_{s != r} <m, v_s> D_s
        total = 0
        for s in range(n):
            if s == r:
                continue
            coef = sum(x * y for x, y in zip(m, fan.rays[s]))
            if coef:
                total -= coef * out.get(tuple(sorted((r, r, s))), 0)
        if total:
            out[(r, r, r)] = total
    return out


def triple(fan: LatticeFan, a: int, b: int, c: int) -> int:
    return triple_intersections(fan).get(tuple(sorted((a, b, c))), 0)


def divisor_product(fan: LatticeFan, d1: Sequence[int], d2: Sequence[int]) -> Tuple[int, ...]:
    """Pairing vector of the curve class ``D1 . D2`` (divisors in ray coordinates)."""
    n = len(fan.rays)
    out = [0] * n
    for (a, b, c), v in triple_intersections(fan).items():
        for x, y, z in {(a, b, c), (a, c, b), (b, c, a), (b, a, c), (c, a, b), (c, b, a)}:
            out[z] += d1[x] * d2[y] * v
    return tuple(out)


def pullback(fan: LatticeFan, ray: int) -> Tuple[int, ...]:
    """Ray coordinates of the total transform of ``D_ray`` from the fan it was created in."""
    c = [0] * len(fan.rays)
    c[ray] = 1
    for i in range(ray + 1, len(fan.rays)):
        if fan.centers[i] is not None:
            c[i] = sum(c[j] for j in fan.centers[i])
    return tuple(c)


# ---------------------------------------------------------------------------
# intersection tables

@dataclass(frozen=True)
class IntersectionTable:
    """Fan-derived data for one model.

    ``divisors[k]`` are ray coordinates of the toric divisor basis elements,
    ``curves[l]`` pairing vectors of the toric curve basis elements and
    ``pairing[k][l]`` the intersection numbers between them, including the
    formal block for extra general points.
    """
    basis: ClassBasis
    fan: LatticeFan
    divisors: Tuple[Tuple[int, ...], ...]
    curves: Tuple[Tuple[int, ...], ...]
    pairing: Tuple[Tuple[int, ...], ...]

    @property
    def coefficient_pairing(self) -> List[List[int]]:
        """Matrix T with ``D . C = D.coefficients @ T @ C.coefficients``."""
        return [[p * s for p, s in zip(row, self.basis.signs)] for row in self.pairing]


def basis_rays(basis: ClassBasis) -> Tuple[str, ...]:
    """Fan labels of the rays whose pulled-back divisors form the toric divisor basis."""
    if basis.side == "P3":
        out = ("v1",) + P3_POINT_RAYS[:basis.toric_points]
        if basis.lines:
            out += tuple(p3_line_ray(i, j) for i, j in p3_line_pairs())
        return out
    out = CUBE_FACTOR_RAYS + CUBE_POINT_RAYS[:basis.toric_points]
    return out + (CUBE_LINE_RAYS if basis.lines else ())


def _toric_divisor_basis(basis: ClassBasis, fan: LatticeFan) -> List[Tuple[int, ...]]:
    return [pullback(fan, fan.index(r)) for r in basis_rays(basis)]


def _fibre_curve(fan: LatticeFan, line_ray: int) -> Tuple[int, ...]:
    center = set(fan.centers[line_ray])
    for w in fan.walls:
        if line_ray in w:
            other = (set(w) - {line_ray}).pop()
            if other not in center:
                return wall_relation(fan, w)
    raise AssertionError("line ray without fibre wall")


def _toric_curve_basis(basis: ClassBasis, fan: LatticeFan, divisors) -> List[Tuple[int, ...]]:
    nd, kt = basis.n_degrees, basis.toric_points
    if basis.side == "P3":
        other_plane = pullback(fan, fan.index("v2"))
        out = [divisor_product(fan, divisors[0], other_plane)]
    else:
        h = divisors[:3]
        out = [divisor_product(fan, h[(j + 1) % 3], h[(j + 2) % 3]) for j in range(3)]
    for e in divisors[nd:nd + kt]:
        out.append(tuple(-x for x in divisor_product(fan, e, e)))
    for r in basis_rays(basis)[nd + kt:]:
        out.append(_fibre_curve(fan, fan.index(r)))
    return out


@lru_cache(maxsize=None)
def intersection_table(basis: ClassBasis) -> IntersectionTable:
    fan = model_fan(basis)
    divisors = _toric_divisor_basis(basis, fan)
    curves = _toric_curve_basis(basis, fan, divisors)
    toric_rank = len(divisors)
    # order: degrees, toric points, formal points, lines
    nd, kt, kf = basis.n_degrees, basis.toric_points, basis.formal_points
    toric_slots = list(range(nd + kt)) + list(range(nd + kt + kf, basis.rank))
    pairing = [[0] * basis.rank for _ in range(basis.rank)]
    for a, k in enumerate(toric_slots):
        for b, l in enumerate(toric_slots):
            pairing[k][l] = sum(x * y for x, y in zip(divisors[a], curves[b]))
    for t in range(nd + kt, nd + kt + kf):
        pairing[t][t] = -1  # formal exceptional point: E.e = -1, orthogonal to the rest
    assert len(toric_slots) == toric_rank
    return IntersectionTable(basis, fan, tuple(divisors), tuple(curves),
                             tuple(map(tuple, pairing)))


def _check_fan(fan: Optional[LatticeFan], basis: ClassBasis) -> IntersectionTable:
    table = intersection_table(basis)
    if fan is not None and fan.rays != table.fan.rays:
        raise BasisModelMismatch(f"fan {fan.name!r} does not carry basis {basis.tag}")
    return table


def _toric_slots(basis: ClassBasis) -> List[int]:
    nd, kt, kf = basis.n_degrees, basis.toric_points, basis.formal_points
    return list(range(nd + kt)) + list(range(nd + kt + kf, basis.rank))


def curve_from_pairing(basis: ClassBasis, pairing_vector: Sequence[int]) -> CurveClass:
    """Express a curve given by its pairings with the ray divisors in ``basis``."""
    table = intersection_table(basis)
    rhs = [0] * basis.rank
    for slot, div in zip(_toric_slots(basis), table.divisors):
        rhs[slot] = sum(x * y for x, y in zip(div, pairing_vector))
    return CurveClass(basis, tuple(_exact.solve_int(table.coefficient_pairing, rhs)))


def divisor_from_rays(basis: ClassBasis, ray_coefficients: Sequence[int]) -> DivisorClass:
    """Express ``sum c_rho D_rho`` in the divisor basis of ``basis``."""
    table = intersection_table(basis)
    rhs = [0] * basis.rank
    for slot, curve in zip(_toric_slots(basis), table.curves):
        rhs[slot] = sum(x * y for x, y in zip(ray_coefficients, curve))
    # D . g_l = sum_k x_k pairing[k][l]
    return DivisorClass(basis, tuple(_exact.solve_int(_exact.transpose(table.pairing), rhs)))


def curve_pairing_vector(beta: CurveClass) -> Tuple[int, ...]:
    """Pairings of the toric part of ``beta`` with every ray divisor."""
    table = intersection_table(beta.basis)
    n = len(table.fan.rays)
    out = [0] * n
    for slot, curve in zip(_toric_slots(beta.basis), table.curves):
        w = beta.coefficients[slot] * beta.basis.signs[slot]
        for r in range(n):
            out[r] += w * curve[r]
    return tuple(out)


def ray_divisor_class(fan: Optional[LatticeFan], ray, basis: ClassBasis) -> DivisorClass:
    """Class of the orbit closure ``D_ray`` in ``basis``; ``ray`` is an index or label."""
    table = _check_fan(fan, basis)
    r = table.fan.index(ray) if isinstance(ray, str) else int(ray)
    unit = [0] * len(table.fan.rays)
    unit[r] = 1
    return divisor_from_rays(basis, unit)


def wall_curve_class(fan: Optional[LatticeFan], wall, basis: ClassBasis) -> CurveClass:
    """Class of the invariant curve ``V(wall)``; ``wall`` given by indices or labels."""
    table = _check_fan(fan, basis)
    w = tuple(sorted(table.fan.index(x) if isinstance(x, str) else int(x) for x in wall))
    return curve_from_pairing(basis, wall_relation(table.fan, w))


def intersect(D: DivisorClass, C: CurveClass) -> int:
    if not isinstance(D, DivisorClass) or not isinstance(C, CurveClass):
        raise TypeError("intersect expects a DivisorClass and a CurveClass")
    if D.basis != C.basis:
        raise BasisModelMismatch(f"{D.basis.tag} divisor paired with {C.basis.tag} curve")
    t = intersection_table(D.basis).coefficient_pairing
    return sum(x * t[k][l] * y for k, x in enumerate(D.coefficients) if x
               for l, y in enumerate(C.coefficients) if y)


def canonical_class(fan: Optional[LatticeFan], basis: ClassBasis) -> DivisorClass:
    """``K = -sum_rho D_rho`` on the toric part, plus ``2 E_i`` per formal point."""
    _check_fan(fan, basis)
    return _canonical_class(basis)


@lru_cache(maxsize=None)
def _canonical_class(basis: ClassBasis) -> DivisorClass:
    table = intersection_table(basis)
    k = divisor_from_rays(basis, [-1] * len(table.fan.rays))
    c = list(k.coefficients)
    nd, kt = basis.n_degrees, basis.toric_points
    for t in range(nd + kt, nd + kt + basis.formal_points):
        c[t] = 2
    return DivisorClass(basis, tuple(c))


def anticanonical_degree(beta: CurveClass) -> int:
    """``-K . beta``."""
    return -intersect(canonical_class(None, beta.basis), beta)


def is_nef_on_invariant_curves(D: DivisorClass, fan: Optional[LatticeFan] = None):
    """Decide nefness of ``D`` on the toric part by pairing with all wall curves.

    Returns ``(is_nef, violators, certificate)`` where ``certificate`` maps every
    wall (as a label pair) to its intersection number with ``D``.
    """
    table = _check_fan(fan, D.basis)
    cert = {}
    for w in table.fan.walls:
        cert[table.fan.cone_labels(w)] = intersect(D, curve_from_pairing(D.basis, wall_relation(table.fan, w)))
    violators = [w for w, v in cert.items() if v < 0]
    return not violators, violators, cert


def line_pair_divisors(basis: ClassBasis = PERM_P3) -> Dict[str, DivisorClass]:
    """``2H - (E_1+..+E_4) - F_pq - F_p'q'`` for the three splittings of {1,2,3,4}.

    Keys are ``"pq|p'q'"``.  Only the four torus-fixed points enter.
    """
    if basis.side != "P3" or not basis.lines:
        raise BasisModelMismatch(f"line-pair divisors live on the P^3 permutohedral model, not {basis.tag}")
    out = {}
    for p, q in p3_line_pairs():
        if p != 1:
            continue
        r, s = (t for t in range(1, 5) if t not in (p, q))
        c = [0] * basis.rank
        c[0] = 2
        for i in range(4):
            c[1 + i] = -1
        names = basis.divisor_names
        c[names.index(f"F{p}{q}")] = -1
        c[names.index(f"F{r}{s}")] = -1
        out[f"{p}{q}|{r}{s}"] = DivisorClass(basis, tuple(c))
    return out


def self_intersections(basis: ClassBasis) -> Dict[str, int]:
    """``E.e`` and ``F.f`` for every toric exceptional class, straight from the fan."""
    table = intersection_table(basis)
    nd = basis.n_degrees
    slots = _toric_slots(basis)
    return {basis.divisor_names[k] + "." + basis.curve_names[k]: table.pairing[k][k]
            for k in slots if k >= nd}
