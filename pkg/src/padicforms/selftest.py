"""Golden vectors used by ``padicforms --selftest``."""
from __future__ import annotations

from fractions import Fraction

from .hecke import HeckeLocalData
from .qseries import delta_series, ramanujan_congruence_defect

DELTA_GOLDEN = (
    0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    534612, -370944, -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420,
)

CONGRUENCE_GOLDEN = {
    7: -2861568, 8: -12437115, 9: -45414400, 10: -144788634, 11: -412896000,
    12: -1075797268, 13: -2593575936, 14: -5863302600, 15: -12517805568,
    16: -25471460475, 17: -49597544448, 18: -93053764671, 19: -168582124800,
}


def _check_delta():
    got = delta_series(20).coeffs
    return got == DELTA_GOLDEN, "tau(1..19) against the reference table"


def _check_delta_eta():
    got = delta_series(20, method="eta").coeffs
    return got == DELTA_GOLDEN, "eta-product route agrees with the table"


def _check_congruence():
    quotient = ramanujan_congruence_defect(20)
    ok = all(quotient[n] == v for n, v in CONGRUENCE_GOLDEN.items())
    return ok, "(Delta - h12)/691 at q^7..q^19"


def _check_slopes():
    slopes = HeckeLocalData(2, -24, 12).slopes
    return tuple(slopes) == (Fraction(3), Fraction(8)), "Newton slopes of Delta at p = 2 are 3 and 8"


CHECKS = (
    ("delta", _check_delta),
    ("delta-eta", _check_delta_eta),
    ("congruence", _check_congruence),
    ("slopes", _check_slopes),
)


def run_selftest() -> list[dict]:
    results = []
    for name, check in CHECKS:
        ok, what = check()
        results.append({"name": name, "passed": bool(ok), "description": what})
    return results
