r"""
Truncated q-expansions and the classical level-one constructions.

A :class:`QSeries` is ``a_0 + a_1 q + ... + a_{N-1} q^{N-1} + O(q^N)`` over
one of the rings in :mod:`padicforms.rings`. Binary operations truncate to
the smaller precision.

Multiplication has two algorithms that must agree exactly: the schoolbook
Cauchy product, and Kronecker substitution (pack the coefficients into one
big integer, multiply, unpack) for ZZ, QQ and Z/mZ, with Karatsuba as the
fallback for p-adic coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import bernoulli

from .errors import CongruenceViolation, DomainError
from .rings import QQ, ZZ, IntegersMod, Ring, ring_from_tag

KARATSUBA_CUTOFF = 24
AUTO_FAST_CUTOFF = 16


class QSeries:
    __slots__ = ("_coeffs", "ring")

    def __init__(self, coeffs, ring: Ring = ZZ, prec: int | None = None):
        coeffs = [ring.coerce(c) for c in coeffs]
        if prec is None:
            prec = len(coeffs)
        if prec < 0:
            raise DomainError("precision must be non-negative")
        coeffs = coeffs[:prec] + [ring.zero] * (prec - len(coeffs))
        self._coeffs = tuple(coeffs)
        self.ring = ring

    @classmethod
    def _raw(cls, coeffs, ring: Ring) -> QSeries:
        obj = object.__new__(cls)
        obj._coeffs = tuple(coeffs)
        obj.ring = ring
        return obj

    @classmethod
    def monomial(cls, n: int, prec: int, ring: Ring = ZZ, c=1) -> QSeries:
        coeffs = [ring.zero] * prec
        if n < prec:
            coeffs[n] = ring.coerce(c)
        return cls._raw(coeffs, ring)

    @property
    def prec(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.ring == other.ring and self.prec == other.prec and all(
            a == b for a, b in zip(self._coeffs, other._coeffs)
        )

    __hash__ = None

    def __repr__(self):
        terms = []
        for n, c in enumerate(self._coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if n == 0 else f"{c}*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(q^{self.prec})"

    def _check(self, other: QSeries):
        if self.ring != other.ring:
            raise DomainError(f"ring mismatch: {self.ring} vs {other.ring}")

    # -- ring operations ---------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, self.prec, self.ring, other)
        self._check(other)
        norm = self.ring.normalize
        return QSeries._raw((norm(a + b) for a, b in zip(self._coeffs, other._coeffs)), self.ring)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.normalize
        return QSeries._raw((norm(-a) for a in self._coeffs), self.ring)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.monomial(0, self.prec, self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> QSeries:
        c = self.ring.coerce(c)
        norm = self.ring.normalize
        return QSeries._raw((norm(c * a) for a in self._coeffs), self.ring)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> QSeries:
        if not isinstance(n, int) or n < 0:
            raise DomainError("series powers must be non-negative integers; see pow_rational")
        result = QSeries.monomial(0, self.prec, self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- structural ---------------------------------------------------------------------
    def truncate(self, prec: int) -> QSeries:
        if prec > self.prec:
            raise DomainError(f"cannot raise precision from {self.prec} to {prec}")
        return QSeries._raw(self._coeffs[:prec], self.ring)

    def shift_down(self, k: int) -> QSeries:
        """Divide by ``q^k``; the first ``k`` coefficients must vanish."""
        if any(c != 0 for c in self._coeffs[:k]):
            raise DomainError(f"series is not divisible by q^{k}")
        return QSeries._raw(self._coeffs[k:], self.ring)

    def valuation(self):
        for n, c in enumerate(self._coeffs):
            if c != 0:
                return n
        return math.inf

    def change_ring(self, ring: Ring) -> QSeries:
        return QSeries(self._coeffs, ring)

    def exact_divide(self, n: int) -> QSeries:
        """Coefficientwise exact division by the integer ``n``.

        Over ZZ every coefficient must be divisible; a failure raises
        :class:`CongruenceViolation`, never a silent promotion to QQ.
        """
        out = []
        for i, c in enumerate(self._coeffs):
            d = self.ring.exact_div_int(c, n)
            if d is None:
                raise CongruenceViolation(f"coefficient {c} of q^{i} is not divisible by {n}")
            out.append(d)
        return QSeries._raw(out, self.ring)

    # -- serialization ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "ring": self.ring.tag,
            "precision": self.prec,
            "coeffs": [self.ring.to_json(c) for c in self._coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> QSeries:
        ring = ring_from_tag(data["ring"])
        coeffs = [ring.from_json(c) for c in data["coeffs"]]
        if len(coeffs) != data["precision"]:
            raise DomainError("coefficient list length does not match precision")
        return cls._raw(coeffs, ring)


# -- multiplication ---------------------------------------------------------------------

def _mul_naive(a, b, n, zero, skip_zeros=True):
    out = [zero] * n
    for i, ai in enumerate(a[:n]):
        # an inexact zero still limits the precision of what it touches
        if skip_zeros and ai == 0:
            continue
        lim = n - i
        for j, bj in enumerate(b[:lim]):
            out[i + j] += ai * bj
    return out


def _pack(values, width):
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in values), "little")


def _mul_kronecker(a, b, n):
    """Signed integer polynomial product truncated to ``n`` terms."""
    a, b = list(a[:n]), list(b[:n])
    if not a or not b:
        return [0] * n
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    if bound == 0:
        return [0] * n
    width = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * width

    def pack_signed(xs):
        return _pack([x if x > 0 else 0 for x in xs], width) - _pack([-x if x < 0 else 0 for x in xs], width)

    c = pack_signed(a) * pack_signed(b)
    length = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    # bias every digit by 2^(bits-1) so the packed integer has no borrows
    biased = c + _pack([half] * length, width)
    raw = biased.to_bytes(width * length, "little")
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") - half for i in range(min(n, length))]
    return out + [0] * (n - len(out))


def _mul_karatsuba(a, b, n, zero):
    a, b = list(a[:n]), list(b[:n])
    full = _karatsuba(a, b, zero)
    full = full[:n]
    return full + [zero] * (n - len(full))


def _karatsuba(a, b, zero):
    if not a or not b:
        return []
    if min(len(a), len(b)) <= KARATSUBA_CUTOFF:
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return out
    m = max(len(a), len(b)) // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _karatsuba(a0, b0, zero)
    z2 = _karatsuba(a1, b1, zero)
    sa = _padd(a0, a1, zero)
    sb = _padd(b0, b1, zero)
    z1 = _karatsuba(sa, sb, zero)
    z1 = _psub(_psub(z1, z0, zero), z2, zero)
    out = [zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = out[i] + c
    for i, c in enumerate(z1):
        out[i + m] = out[i + m] + c
    for i, c in enumerate(z2):
        out[i + 2 * m] = out[i + 2 * m] + c
    return out


def _padd(x, y, zero):
    n = max(len(x), len(y))
    return [(x[i] if i < len(x) else zero) + (y[i] if i < len(y) else zero) for i in range(n)]


def _psub(x, y, zero):
    n = max(len(x), len(y))
    return [(x[i] if i < len(x) else zero) - (y[i] if i < len(y) else zero) for i in range(n)]


def series_mul(f: QSeries, g: QSeries, algorithm: str = "auto") -> QSeries:
    """Cauchy product truncated to ``min(f.prec, g.prec)``.

    ``algorithm`` is ``"naive"``, ``"fast"`` or ``"auto"`` (fast above a
    small size cutoff). Both paths return identical coefficients.
    """
    f._check(g)
    ring = f.ring
    n = min(f.prec, g.prec)
    a, b = f.coeffs, g.coeffs
    if algorithm == "auto":
        algorithm = "fast" if n > AUTO_FAST_CUTOFF else "naive"
    if algorithm == "naive":
        out = _mul_naive(a, b, n, ring.zero, skip_zeros=ring.exact)
        return QSeries._raw(map(ring.normalize, out), ring)
    if algorithm != "fast":
        raise DomainError(f"unknown multiplication algorithm {algorithm!r}")
    if ring is ZZ or ring.tag == "ZZ":
        return QSeries._raw(_mul_kronecker(a, b, n), ring)
    if isinstance(ring, IntegersMod):
        out = _mul_kronecker(a, b, n)
        return QSeries._raw((c % ring.m for c in out), ring)
    if ring.tag == "QQ":
        da = math.lcm(*(c.denominator for c in a[:n])) if n else 1
        db = math.lcm(*(c.denominator for c in b[:n])) if n else 1
        ia = [int(c * da) for c in a[:n]]
        ib = [int(c * db) for c in b[:n]]
        den = da * db
        return QSeries._raw((Fraction(c, den) for c in _mul_kronecker(ia, ib, n)), ring)
    out = _mul_karatsuba(a, b, n, ring.zero)
    return QSeries._raw(map(ring.normalize, out), ring)


# -- classical constructions ---------------------------------------------------------------

def divisor_sigma_table(k: int, n: int) -> list[int]:
    """``[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n-1)]`` by a divisor sieve."""
    out = [0] * n
    for d in range(1, n):
        dk = d**k
        for m in range(d, n, d):
            out[m] += dk
    return out


def divisor_sum_series(k: int, prec: int) -> QSeries:
    r"""``h_k = sum_{d>=1} d^(k-1) q^d / (1 - q^d)`` over ZZ.

    Expanding each Lambert term ``d^(k-1)(q^d + q^2d + ...)`` puts
    ``sigma_{k-1}(n)`` at ``q^n``.
    """
    if k < 2 or k % 2:
        raise DomainError("k must be an even integer >= 2")
    if prec < 1:
        raise DomainError("precision must be at least 1")
    return QSeries._raw(divisor_sigma_table(k - 1, prec), ZZ)


def eisenstein_series(k: int, prec: int) -> QSeries:
    """Normalized ``E_k = 1 - (2k/B_k) h_k``; over ZZ when that is integral (k = 4, 6, 8, 10, 14)."""
    if k < 4 or k % 2:
        raise DomainError("level-one Eisenstein series need even k >= 4")
    b = bernoulli(k)
    factor = Fraction(-2 * k) / Fraction(int(b.p), int(b.q))
    h = divisor_sum_series(k, prec)
    if factor.denominator == 1:
        return 1 + h.scale(factor.numerator)
    return 1 + h.change_ring(QQ).scale(factor)


def e4_series(prec: int) -> QSeries:
    return 1 + divisor_sum_series(4, prec).scale(240)


def e6_series(prec: int) -> QSeries:
    return 1 - divisor_sum_series(6, prec).scale(504)


def euler_product_series(prec: int) -> QSeries:
    """``prod_{m>=1} (1 - q^m)`` from its sparse pentagonal expansion."""
    coeffs = [0] * prec
    k = 0
    while True:
        g = k * (3 * k - 1) // 2
        if g >= prec:
            break
        sign = -1 if k % 2 else 1
        coeffs[g] += sign
        if k:
            g2 = k * (3 * k + 1) // 2
            if g2 < prec:
                coeffs[g2] += sign
        k += 1
    return QSeries._raw(coeffs, ZZ)


def delta_series(prec: int, method: str = "eisenstein") -> QSeries:
    r"""Discriminant ``Delta = sum tau(n) q^n`` to ``O(q^prec)``.

    ``method="eisenstein"``: ``(E_4^3 - E_6^2) / 1728`` with checked exact
    division. ``method="eta"``: ``q * prod (1 - q^m)^24``.
    """
    if prec < 2:
        raise DomainError("precision must be at least 2")
    if method == "eisenstein":
        e4, e6 = e4_series(prec), e6_series(prec)
        return (e4 * e4 * e4 - e6 * e6).exact_divide(1728)
    if method == "eta":
        eta24 = euler_product_series(prec - 1) ** 24
        return QSeries._raw((0,) + eta24.coeffs, ZZ)
    raise DomainError(f"unknown method {method!r}")


@lru_cache(maxsize=8)
def _tau_table(prec: int) -> tuple:
    return delta_series(prec, method="eta").coeffs


def tau_upto(n: int) -> list[int]:
    """``[tau(1), ..., tau(n)]``."""
    if n < 1:
        return []
    size = 1 << max(6, n.bit_length())
    return list(_tau_table(size + 1)[1:n + 1])


def tau(n: int) -> int:
    """Ramanujan's tau function."""
    if n < 1:
        raise DomainError("tau is defined for n >= 1")
    return tau_upto(n)[-1]


def ramanujan_congruence_defect(prec: int) -> QSeries:
    """``(Delta - h_12) / 691`` as an integral series.

    Raises :class:`CongruenceViolation` if any coefficient of
    ``Delta - h_12`` is not divisible by 691.
    """
    if prec < 2:
        raise DomainError("precision must be at least 2")
    return (delta_series(prec, method="eta") - divisor_sum_series(12, prec)).exact_divide(691)


def pow_rational(f: QSeries, e) -> QSeries:
    r"""``f^e`` for a rational exponent, where ``f`` has constant term 1.

    Uses the recurrence from ``f * g' = e * f' * g`` for ``g = f^e``:
    ``n g_n = sum_{j=1}^{n} (e*j - (n - j)) f_j g_{n-j}``.
    """
    e = Fraction(e)
    if f.ring not in (ZZ, QQ):
        raise DomainError("pow_rational needs integer or rational coefficients")
    if f.prec == 0:
        return QSeries([], QQ)
    if f[0] != 1:
        raise DomainError("constant term must equal 1")
    a = [Fraction(c) for c in f.coeffs]
    n_terms = f.prec
    g = [Fraction(1)] + [Fraction(0)] * (n_terms - 1)
    nz = [j for j in range(1, n_terms) if a[j]]
    num, den = e.numerator, e.denominator
    for n in range(1, n_terms):
        acc = Fraction(0)
        for j in nz:
            if j > n:
                break
            acc += (num * j - den * (n - j)) * a[j] * g[n - j]
        g[n] = acc / (den * n)
    return QSeries._raw(g, QQ)


def partition_series(prec: int) -> QSeries:
    """``sum p(n) q^n = (Delta/q)^(-1/24)`` over ZZ."""
    if prec < 1:
        raise DomainError("precision must be at least 1")
    d = delta_series(prec + 1).shift_down(1)
    return pow_rational(d, Fraction(-1, 24)).change_ring(ZZ)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """A floating-point main term. ``exact`` is always False."""

    n: int
    value: float
    lambda_n: float
    exact: bool = False


def hardy_ramanujan_estimate(n: int) -> AsymptoticEstimate:
    r"""Main term ``exp(pi sqrt(2/3 (n - 1/24))) / (4 sqrt(3) lambda_n^2)``, ``lambda_n = sqrt(n - 1/24)``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    lam = math.sqrt(n - 1 / 24)
    value = math.exp(math.pi * math.sqrt(2 / 3 * (n - 1 / 24))) / (4 * math.sqrt(3) * lam**2)
    return AsymptoticEstimate(n, value, lam)


def qexp_by_name(name: str, prec: int, k: int | None = None) -> QSeries:
    if name == "delta":
        return delta_series(prec)
    if name == "e4":
        return e4_series(prec)
    if name == "e6":
        return e6_series(prec)
    if name == "hk":
        if k is None:
            raise DomainError("hk needs a weight k")
        return divisor_sum_series(k, prec)
    if name == "partition":
        return partition_series(prec)
    raise DomainError(f"unknown q-expansion {name!r}")

