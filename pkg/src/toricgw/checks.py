"""Reproducible verification routines shared by the command line and the tests.

Each check returns a plain dict with a boolean ``passed`` and whatever
certificate data backs it.  Randomised checks take an explicit seed.
"""
import random
from functools import lru_cache
from typing import Callable, Dict, List, Optional

from . import _exact
from .gw_calculus import GWQuery, theorem1_map, theorem4_map, vdim
from .intersection import (
    CUBE_SIDE, P3_SIDE, PERM_CUBE, PERM_P3, ClassBasis, CurveClass,
    anticanonical_degree, is_nef_on_invariant_curves, line_pair_divisors,
    model_fan, self_intersections,
)
from .lattice_fan import (
    build_permutohedral_from_cube, build_permutohedral_from_p3,
    completeness_certificate,
)
from .toric_symmetry import (
    ZETA_MATRIX, closed_form_matrix, cremona_cube, cremona_p3, tau_pushforward,
    tau_symmetry, tau_table_check, xi_matrix, zeta_matrix,
)

COEFF_RANGE = (-10, 10)


def random_class(basis: ClassBasis, rng: random.Random, lo: int = -10, hi: int = 10) -> CurveClass:
    return CurveClass(basis, tuple(rng.randint(lo, hi) for _ in range(basis.rank)))


@lru_cache(maxsize=None)
def _anticanonical_weights(basis: ClassBasis) -> List[int]:
    return [anticanonical_degree(CurveClass(basis, tuple(int(t == l) for t in range(basis.rank))))
            for l in range(basis.rank)]


def random_vdim_zero_class(basis: ClassBasis, rng: random.Random,
                           lo: int = -10, hi: int = 10) -> CurveClass:
    """Random class with ``-K.beta = 0``: the first degree is solved for."""
    w = _anticanonical_weights(basis)
    while True:
        c = [rng.randint(lo, hi) for _ in range(basis.rank)]
        rest = sum(x * y for x, y in zip(w[1:], c[1:]))
        if rest % w[0] == 0:
            c[0] = -rest // w[0]
            return CurveClass(basis, tuple(c))


def permutohedral_check() -> dict:
    out = {"passed": True}
    for name, fan in (("perm-p3", build_permutohedral_from_p3()),
                      ("perm-cube", build_permutohedral_from_cube())):
        cert = completeness_certificate(fan)
        row = {"f_vector": fan.f_vector, "smooth": fan.is_smooth(), "complete": cert["complete"]}
        row["passed"] = row["f_vector"] == (14, 36, 24) and row["smooth"] and row["complete"]
        out[name] = row
        out["passed"] &= row["passed"]
    return out


def iso_check() -> dict:
    return tau_table_check()


def zeta_check() -> dict:
    fan = model_fan(PERM_CUBE)
    sym = zeta_matrix()
    square = _exact.matmul(ZETA_MATRIX, ZETA_MATRIX)
    closed = closed_form_matrix(cremona_cube, PERM_CUBE)
    rows = [(name, tuple(r[l] for r in sym.pushforward), tuple(r[l] for r in closed))
            for l, name in enumerate(PERM_CUBE.curve_names)]
    xi = xi_matrix()
    out = {
        "matrix": ZETA_MATRIX,
        "ray_permutation": {fan.labels[i]: fan.labels[j] for i, j in enumerate(sym.ray_permutation)},
        "stabilizes_rays": True,  # zeta_matrix() raises otherwise
        "squares_to_identity": square == _exact.identity(3),
        "pushforward_equals_closed_form": sym.pushforward == closed,
        "columns": rows,
        "xi_pushforward_equals_closed_form": xi.pushforward == closed_form_matrix(cremona_p3, PERM_P3),
    }
    out["passed"] = all(out[k] for k in ("squares_to_identity", "pushforward_equals_closed_form",
                                          "xi_pushforward_equals_closed_form"))
    return out


def tau_check(seed: int = 0, trials: int = 1000) -> dict:
    """Closed-form tau against the fan transport, and its restriction against theorem1_map."""
    rng = random.Random(seed)
    sym = tau_symmetry()
    transport_fail = restrict_fail = 0
    for _ in range(trials):
        beta = random_class(PERM_P3, rng)
        got = tau_pushforward(beta)
        want = CurveClass(PERM_CUBE, tuple(_exact.matvec(sym.pushforward, beta.coefficients)))
        transport_fail += got != want
        k = rng.randint(4, 8)
        plain = CurveClass.from_parts(P3_SIDE(k), rng.randint(-10, 10),
                                      [rng.randint(-10, 10) for _ in range(k)])
        lifted = CurveClass.from_parts(ClassBasis("P3", k, True), plain.d, plain.a)
        image = tau_pushforward(lifted)
        restricted = CurveClass.from_parts(CUBE_SIDE(k - 2), image.d, image.a)
        restrict_fail += any(image.b) or restricted != theorem1_map(plain, warn=False)
    return {"seed": seed, "trials": trials, "transport_failures": transport_fail,
            "theorem1_restriction_failures": restrict_fail,
            "passed": transport_fail == 0 and restrict_fail == 0}


def nef_check() -> dict:
    divisors = {}
    ok = True
    for key, D in line_pair_divisors().items():
        is_nef, violators, cert = is_nef_on_invariant_curves(D)
        divisors[key] = {"divisor": str(D), "walls": len(cert), "min": min(cert.values()),
                         "nef": is_nef, "pairings": {"-".join(w): v for w, v in sorted(cert.items())}}
        ok &= is_nef and len(cert) == 36
    selfs = {**{f"P3 {k}": v for k, v in self_intersections(PERM_P3).items()},
             **{f"CUBE {k}": v for k, v in self_intersections(PERM_CUBE).items()}}
    ok &= all(v == -1 for v in selfs.values())
    return {"divisors": divisors, "self_intersections": selfs, "passed": ok}


def _involution_failures(fn: Callable, make: Callable, rng, trials) -> int:
    bad = 0
    for _ in range(trials):
        beta = make(rng)
        bad += fn(fn(beta)) != beta
    return bad


INVOLUTIONS = {
    "cremona_p3": (cremona_p3, PERM_P3),
    "cremona_cube": (cremona_cube, PERM_CUBE),
    "theorem4_map": (lambda b: theorem4_map(b, warn=False), CUBE_SIDE(4)),
}


def involution_check(seed: int = 0, trials: int = 1000) -> dict:
    rng = random.Random(seed)
    fails = {name: _involution_failures(fn, lambda r, b=basis: random_class(b, r), rng, trials)
             for name, (fn, basis) in INVOLUTIONS.items()}
    return {"seed": seed, "trials": trials, "range": COEFF_RANGE, "failures": fails,
            "passed": not any(fails.values())}


def vdim_check(seed: int = 0, trials: int = 1000) -> dict:
    rng = random.Random(seed)
    t1 = 0
    for _ in range(trials):
        beta = random_vdim_zero_class(P3_SIDE(6), rng)
        img = theorem1_map(beta, warn=False)
        t1 += sum(img.d) != sum(img.a)
    fails = {"theorem1_map": t1}
    for name, (fn, basis) in INVOLUTIONS.items():
        bad = 0
        for _ in range(trials):
            beta = random_vdim_zero_class(basis, rng)
            bad += vdim(GWQuery.of(fn(beta))) != 0
        fails[name] = bad
    return {"seed": seed, "trials": trials, "failures": fails, "passed": not any(fails.values())}


CHECKS: Dict[str, Callable[..., dict]] = {
    "iso": iso_check,
    "zeta": zeta_check,
    "tau": tau_check,
    "nef": nef_check,
    "involutions": involution_check,
    "vdim": vdim_check,
}
RANDOMISED = {"tau", "involutions", "vdim"}


def run_check(name: str, seed: int = 0, trials: int = 1000) -> dict:
    fn = CHECKS[name]
    return fn(seed, trials) if name in RANDOMISED else fn()
