"""Reference q-expansions, kept as the printed polynomial text and parsed on import."""
import re

_DELTA_TEXT = """
q - 24*q^2 + 252*q^3 - 1472*q^4 + 4830*q^5 - 6048*q^6 - 16744*q^7
+ 84480*q^8 - 113643*q^9 - 115920*q^10 + 534612*q^11
- 370944*q^12 - 577738*q^13 + 401856*q^14 + 1217160*q^15
+ 987136*q^16 - 6905934*q^17+ 2727432*q^18 + 10661420*q^19 + O(q^20)
"""

_CONGRUENCE_TEXT = """
 - 2861568*q^7 - 12437115*q^8 - 45414400*q^9
 - 144788634*q^10 - 412896000*q^11 - 1075797268*q^12
 - 2593575936*q^13 - 5863302600*q^14 - 12517805568*q^15
 - 25471460475*q^16 - 49597544448*q^17
 - 93053764671*q^18 - 168582124800*q^19 + O(q^20)
"""

_TERM = re.compile(r"([+-]?)\s*(\d+)?\*?q(?:\^(\d+))?")


def parse_series(text: str) -> dict[int, int]:
    body = text.replace("\n", " ").split("O(")[0]
    out = {}
    for sign, coeff, exp in _TERM.findall(body):
        value = int(coeff) if coeff else 1
        out[int(exp) if exp else 1] = -value if sign == "-" else value
    return out


DELTA = parse_series(_DELTA_TEXT)
DELTA_GOLDEN = [DELTA[n] for n in range(1, 20)]
CONGRUENCE = parse_series(_CONGRUENCE_TEXT)
