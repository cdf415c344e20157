"""Newton polygons of polynomials and truncated series over Q_p."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Padic, padic_valuation, require_prime
from .errors import DomainError, PrecisionError


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points ``(i, v_p(c_i))``.

    ``slopes`` lists ``(slope, multiplicity)`` left to right. For a series
    ``1 + c_1 T + ...`` the slopes are the valuations of the reciprocal roots.
    """

    p: int
    vertices: tuple[tuple[int, Fraction], ...]
    slopes: tuple[tuple[Fraction, int], ...]

    def slope_multiset(self) -> list[Fraction]:
        return [s for s, m in self.slopes for _ in range(m)]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.slopes)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "vertices": [[i, str(v)] for i, v in self.vertices],
            "slopes": [{"slope": str(s), "multiplicity": m} for s, m in self.slopes],
        }

    def render_text(self) -> str:
        lines = [f"Newton polygon at p = {self.p}"]
        lines += [f"  vertex ({i}, {v})" for i, v in self.vertices]
        lines += [f"  slope {s} x{m}" for s, m in self.slopes]
        return "\n".join(lines)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Monotone-chain lower hull; collinear interior points are dropped."""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(coeffs, p: int) -> NewtonPolygon:
    """Newton polygon of ``sum c_i T^i`` (ascending coefficients).

    Coefficients may be ints, Fractions or :class:`Padic`. A p-adic
    coefficient that is zero only to precision ``O(p^N)`` is dropped, which
    is legitimate only when ``N`` already lies on or above the hull; otherwise
    :class:`PrecisionError` is raised.
    """
    require_prime(p)
    pts, fuzzy = [], []
    for i, c in enumerate(coeffs):
        v = padic_valuation(c, p) if not isinstance(c, Padic) else c.valuation
        if v == math.inf:
            if isinstance(c, Padic):
                fuzzy.append((i, Fraction(c.absprec)))
            continue
        pts.append((i, Fraction(v)))
    if len(pts) < 2:
        raise DomainError("degenerate Newton polygon: fewer than two finite-valuation coefficients")
    hull = lower_hull(pts)
    for i, n in fuzzy:
        # a trailing inexact zero is treated as the discarded infinite tail
        if hull[0][0] < i < hull[-1][0] and n < _height(hull, i):
            raise PrecisionError(f"coefficient {i} is zero only to O({p}^{n}); polygon undetermined")
    slopes = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        s = (y1 - y0) / (x1 - x0)
        if slopes and slopes[-1][0] == s:
            slopes[-1] = (s, slopes[-1][1] + x1 - x0)
        else:
            slopes.append((s, x1 - x0))
    return NewtonPolygon(p, tuple(hull), tuple(slopes))


def _height(hull, x):
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)
    return hull[-1][1]
