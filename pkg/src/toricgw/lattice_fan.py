"""Simplicial fans in Z^3, star subdivision and fan isomorphism search.

A :class:`LatticeFan` stores its rays, the maximal cones (as sorted tuples of
ray indices) and, for every ray produced by a star subdivision, the cone that
was subdivided.  Lower-dimensional cones are faces of maximal cones and are
computed on demand.

>>> fan = build_permutohedral_from_p3()
>>> fan.f_vector
(14, 36, 24)
"""
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import _exact
from .errors import CenterNotInFan, NonCompleteInput, NonSmoothInput

Vec = Tuple[int, int, int]
Cone = Tuple[int, ...]

__all__ = [
    "LatticeFan", "BlowupSequence", "ToricSymmetry",
    "build_p3_fan", "build_cube_fan", "star_subdivide",
    "build_permutohedral_from_p3", "build_permutohedral_from_cube",
    "fan_isomorphism", "fan_isomorphisms", "fan_automorphisms", "P3_SEQUENCE", "CUBE_SEQUENCE",
]


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g == 1


@dataclass(frozen=True)
class LatticeFan:
    rays: Tuple[Vec, ...]
    max_cones: Tuple[Cone, ...]
    labels: Tuple[str, ...]
    # centers[i] is the cone whose star subdivision created ray i (None for base rays)
    centers: Tuple[Optional[Cone], ...] = ()
    name: str = ""

    def __post_init__(self):
        if not self.centers:
            object.__setattr__(self, "centers", (None,) * len(self.rays))
        for v in self.rays:
            if len(v) != 3 or not is_primitive(v):
                raise ValueError(f"ray {v} is not a primitive vector of Z^3")
        if len(set(self.labels)) != len(self.rays):
            raise ValueError("ray labels must be unique")

    # -- lookup -------------------------------------------------------
    def index(self, label: str) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def cone(self, *labels: str) -> Cone:
        """Sorted index tuple for the cone spanned by the labelled rays."""
        return tuple(sorted(self.index(lab) for lab in labels))

    def cone_labels(self, cone: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self.labels[i] for i in cone)

    def generator_matrix(self, cone: Iterable[int]) -> List[List[int]]:
        """Rows are the generators of ``cone``."""
        return [list(self.rays[i]) for i in cone]

    # -- faces --------------------------------------------------------
    def cones(self, dim: int) -> Tuple[Cone, ...]:
        if dim == 0:
            return ((),)
        faces = {c for m in self.max_cones for c in combinations(m, dim)}
        return tuple(sorted(faces))

    @property
    def walls(self) -> Tuple[Cone, ...]:
        return self.cones(2)

    def has_cone(self, cone: Iterable[int]) -> bool:
        s = set(cone)
        return any(s <= set(m) for m in self.max_cones)

    def max_cones_containing(self, cone: Iterable[int]) -> Tuple[Cone, ...]:
        s = set(cone)
        return tuple(m for m in self.max_cones if s <= set(m))

    @property
    def f_vector(self) -> Tuple[int, int, int]:
        return (len(self.rays), len(self.walls), len(self.max_cones))

    # -- properties ---------------------------------------------------
    def is_smooth(self) -> bool:
        return all(abs(_exact.det(self.generator_matrix(m))) == 1
                   for m in self.max_cones)

    def is_complete(self) -> bool:
        return completeness_certificate(self)["complete"]

    def __repr__(self):
        n, w, m = self.f_vector
        return f"LatticeFan({self.name or '?'}: {n} rays, {w} walls, {m} maximal cones)"


# ---------------------------------------------------------------------------
# completeness

def _side(fan: LatticeFan, wall: Cone, v: Sequence[int]) -> int:
    a, b = (fan.rays[i] for i in wall)
    d = _exact.det([a, b, v])
    return (d > 0) - (d < 0)


def _interior_contains(fan: LatticeFan, cone: Cone, p: Sequence[int]) -> Optional[bool]:
    """True if p is interior, False if outside, None if on the boundary."""
    # rows of the generator matrix are rays, so solve G^T lambda = p
    lam = _exact.solve(_exact.transpose(fan.generator_matrix(cone)), p)
    if all(x > 0 for x in lam):
        return True
    if any(x < 0 for x in lam):
        return False
    return None


def _generic_points(fan: LatticeFan, count: int = 8) -> List[Vec]:
    """Deterministic lattice points off every wall plane, one per octant."""
    out = []
    for signs in product((1, -1), repeat=3):
        for s in range(1, 50):
            p = tuple(sg * c for sg, c in zip(signs, (s + 2, 3 * s + 5, 7 * s + 11)))
            if all(_side(fan, w, p) != 0 for w in fan.walls):
                out.append(p)
                break
    return out[:count]


def completeness_certificate(fan: LatticeFan) -> dict:
    """Certify completeness of a simplicial 3-dimensional fan.

    Checks that every maximal cone is full dimensional, every wall lies in
    exactly two maximal cones on opposite sides of the wall plane, and that
    generic test points are covered exactly once.  The first two conditions
    make the cones a closed oriented pseudomanifold around the origin, so the
    covering degree is constant; degree one then gives completeness and
    disjointness of interiors.
    """
    problems = []
    for m in fan.max_cones:
        if _exact.det(fan.generator_matrix(m)) == 0:
            problems.append(("degenerate cone", m))
    for w in fan.walls:
        adj = fan.max_cones_containing(w)
        if len(adj) != 2:
            problems.append(("wall not in exactly two cones", w))
            continue
        (x,), (y,) = (tuple(set(m) - set(w)) for m in adj)
        if _side(fan, w, fan.rays[x]) * _side(fan, w, fan.rays[y]) != -1:
            problems.append(("cones on the same side of wall", w))
    degrees = {}
    for p in _generic_points(fan):
        hits = [_interior_contains(fan, m, p) for m in fan.max_cones]
        degrees[p] = sum(1 for h in hits if h)
        if degrees[p] != 1:
            problems.append(("covering degree", p, degrees[p]))
    return {"complete": not problems, "problems": problems, "degrees": degrees}


# ---------------------------------------------------------------------------
# constructions

def build_p3_fan() -> LatticeFan:
    rays = ((-1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    cones = tuple(combinations(range(4), 3))
    return LatticeFan(rays, cones, ("v1", "v2", "v3", "v4"), name="P3")


def build_cube_fan() -> LatticeFan:
    # u_{2i-1} = e_i, u_{2i} = -e_i; maximal cones are the eight octants
    rays = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
    cones = tuple(sorted(tuple(sorted(c)) for c in product((0, 1), (2, 3), (4, 5))))
    return LatticeFan(rays, cones, tuple(f"u{i}" for i in range(1, 7)), name="CUBE")


def _subdivision_label(labels: Sequence[str]) -> str:
    prefix = labels[0].rstrip("0123456789")
    digits = "".join(sorted("".join(lab[len(prefix):] for lab in labels)))
    return prefix + digits


def star_subdivide(fan: LatticeFan, center: Sequence, name: str = "") -> LatticeFan:
    """Star subdivision of a smooth fan at a 2- or 3-dimensional cone.

    ``center`` may be given as ray indices or ray labels.  The new ray is the
    sum of the center's generators and is labelled with the concatenated
    indices of the generators (``v1, v2 -> v12``).
    """
    idx = tuple(sorted(fan.index(c) if isinstance(c, str) else int(c) for c in center))
    if len(idx) not in (2, 3) or len(set(idx)) != len(idx):
        raise CenterNotInFan(f"center must be a 2- or 3-dimensional cone, got {center}")
    if not fan.has_cone(idx):
        raise CenterNotInFan(f"{fan.cone_labels(idx)} is not a cone of {fan.name or 'fan'}")
    if not fan.is_smooth():
        raise NonSmoothInput("star subdivision is only supported on smooth fans")
    w = tuple(sum(fan.rays[i][k] for i in idx) for k in range(3))
    assert is_primitive(w), w
    new = len(fan.rays)
    label = _subdivision_label(fan.cone_labels(idx))
    while label in fan.labels:  # only after repeated subdivision of the same region
        label += "'"
    cones = []
    for m in fan.max_cones:
        if set(idx) <= set(m):
            for c in idx:
                cones.append(tuple(sorted((set(m) - {c}) | {new})))
        else:
            cones.append(m)
    return LatticeFan(
        fan.rays + (w,),
        tuple(sorted(cones)),
        fan.labels + (label,),
        fan.centers + (idx,),
        name=name or fan.name,
    )


@dataclass(frozen=True)
class BlowupSequence:
    """An ordered list of cones (by ray label) to star-subdivide."""
    base: str
    centers: Tuple[Tuple[str, ...], ...]

    def apply(self, name: str = "", check: bool = True) -> LatticeFan:
        fan = {"P3": build_p3_fan, "CUBE": build_cube_fan}[self.base]()
        for c in self.centers:
            fan = star_subdivide(fan, c, name=name or fan.name)
            if check:
                assert fan.is_smooth() and fan.is_complete(), c
        return fan


P3_SEQUENCE = BlowupSequence("P3", (
    ("v1", "v2", "v3"), ("v1", "v2", "v4"), ("v1", "v3", "v4"), ("v2", "v3", "v4"),
    ("v1", "v2"), ("v1", "v3"), ("v1", "v4"), ("v2", "v3"), ("v2", "v4"), ("v3", "v4"),
))

# two antipodal vertices of the cube and the six edges through them
CUBE_SEQUENCE = BlowupSequence("CUBE", (
    ("u1", "u3", "u5"), ("u2", "u4", "u6"),
    ("u1", "u3"), ("u1", "u5"), ("u3", "u5"), ("u2", "u4"), ("u2", "u6"), ("u4", "u6"),
))


@lru_cache(maxsize=None)
def build_permutohedral_from_p3() -> LatticeFan:
    return P3_SEQUENCE.apply(name="PERM_P3")


@lru_cache(maxsize=None)
def build_permutohedral_from_cube() -> LatticeFan:
    return CUBE_SEQUENCE.apply(name="PERM_CUBE")


# ---------------------------------------------------------------------------
# isomorphisms

@dataclass(frozen=True)
class ToricSymmetry:
    """A lattice isomorphism ``v -> matrix @ v`` carrying one fan onto another.

    ``ray_permutation[i]`` is the index in ``target`` of the image of ray ``i``
    of ``source``.  ``pushforward`` (filled in by :mod:`toricgw.toric_symmetry`)
    acts on curve-class coefficient vectors.
    """
    matrix: Tuple[Tuple[int, int, int], ...]
    ray_permutation: Tuple[int, ...]
    source: LatticeFan = field(repr=False)
    target: LatticeFan = field(repr=False)
    pushforward: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False)

    @property
    def det(self) -> int:
        return _exact.det(self.matrix)

    def apply(self, v: Sequence[int]) -> Vec:
        return tuple(_exact.matvec(self.matrix, v))

    def inverse(self) -> "ToricSymmetry":
        inv = tuple(map(tuple, _exact.inverse_int(self.matrix)))
        perm = [0] * len(self.ray_permutation)
        for i, j in enumerate(self.ray_permutation):
            perm[j] = i
        return ToricSymmetry(inv, tuple(perm), self.target, self.source)


def induced_ray_permutation(matrix, source: LatticeFan, target: LatticeFan) -> Optional[Tuple[int, ...]]:
    """Ray permutation induced by ``matrix``, or None if it is not a fan isomorphism."""
    where = {v: i for i, v in enumerate(target.rays)}
    perm = []
    for v in source.rays:
        img = tuple(_exact.matvec(matrix, v))
        if img not in where:
            return None
        perm.append(where[img])
    if len(set(perm)) != len(target.rays) or len(perm) != len(target.rays):
        return None
    images = {tuple(sorted(perm[i] for i in m)) for m in source.max_cones}
    if images != set(target.max_cones):
        return None
    return tuple(perm)


def _candidate_maps(a: LatticeFan, b: LatticeFan):
    anchor = a.max_cones[0]
    a_inv = _exact.inverse_int(_exact.transpose(a.generator_matrix(anchor)))
    for tau in b.max_cones:
        for order in permutations(tau):
            image = _exact.transpose(b.generator_matrix(order))
            yield tuple(map(tuple, _exact.matmul(image, a_inv)))


def _check_inputs(a: LatticeFan, b: LatticeFan):
    for f in (a, b):
        if not f.is_complete():
            raise NonCompleteInput(f"{f.name or 'fan'} is not complete")
        if not f.is_smooth():
            raise NonSmoothInput(f"{f.name or 'fan'} is not smooth")


def _simplicity(sym: "ToricSymmetry"):
    flat = [x for row in sym.matrix for x in row]
    off = sum(1 for i, row in enumerate(sym.matrix) for j, x in enumerate(row) if x and i != j)
    return (sum(abs(x) for x in flat), off, [-x for x in flat])


def fan_isomorphism(a: LatticeFan, b: LatticeFan) -> Optional[ToricSymmetry]:
    """A unimodular lattice map carrying fan ``a`` onto fan ``b``, or None.

    The search anchors on the first maximal cone of ``a`` and tries every
    ordered maximal cone of ``b`` as its image; a smooth cone's generators form
    a lattice basis so each choice determines the map.  Among all maps found
    the simplest matrix is returned (smallest entry sum, then fewest
    off-diagonal entries), so the identity wins whenever it qualifies.
    """
    found = fan_isomorphisms(a, b)
    return min(found, key=_simplicity) if found else None


def fan_automorphisms(fan: LatticeFan) -> List[ToricSymmetry]:
    """All lattice automorphisms of a complete smooth fan."""
    _check_inputs(fan, fan)
    out = []
    for m in _candidate_maps(fan, fan):
        perm = induced_ray_permutation(m, fan, fan)
        if perm is not None:
            out.append(ToricSymmetry(m, perm, fan, fan))
    return out


def fan_isomorphisms(a: LatticeFan, b: LatticeFan) -> List[ToricSymmetry]:
    """Every lattice isomorphism from ``a`` to ``b``."""
    _check_inputs(a, b)
    if a.f_vector != b.f_vector:
        return []
    out = []
    for m in _candidate_maps(a, b):
        perm = induced_ray_permutation(m, a, b)
        if perm is not None:
            out.append(ToricSymmetry(m, perm, a, b))
    return out
