r"""
Exact arithmetic: valuations, precision-tracked p-adic numbers, Teichmuller
lifts, the p-adic logarithm and exponential, and roots of quadratics over Q_p.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are exact and need no wrapper. The only new number type here is
:class:`Padic`.

A :class:`Padic` is ``p^v * u + O(p^(v+m))`` with ``u`` a unit modulo
``p^m``. Zero cannot be certified under truncation, so the library only
ever produces "zero to absolute precision N", written ``O(p^N)``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import DomainError, NotInGroundFieldError, PrecisionError

DEFAULT_PREC = 20

INFINITY = math.inf


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def require_prime(p) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise DomainError(f"{p!r} is not a prime")
    return p


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(n, p: int):
    """Largest ``e`` with ``p^e | n``; ``math.inf`` for ``n == 0``.

    Accepts integers and rationals (negative valuations for denominators).

    >>> padic_valuation(2048, 2), padic_valuation(-24, 2), padic_valuation(0, 5)
    (11, 3, inf)
    """
    require_prime(p)
    if isinstance(n, Padic):
        return n.valuation
    if n == 0:
        return INFINITY
    if isinstance(n, int):
        return _int_valuation(n, p)
    n = Fraction(n)
    return _int_valuation(n.numerator, p) - _int_valuation(n.denominator, p)


def _split(n: int, p: int) -> tuple[int, int]:
    """Return ``(v, u)`` with ``n = p^v * u`` and ``p`` not dividing ``u``."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


class Padic:
    """Element of Q_p with a finite number of known digits.

    Construct from an exact number with ``Padic(value, p, prec)`` where
    ``prec`` is the number of relative digits kept. ``Padic.zero(p, N)``
    and ``Padic.from_residue(a, p, N)`` build values known modulo ``p^N``.
    Instances are immutable.
    """

    __slots__ = ("p", "_val", "_unit", "_prec")

    def __init__(self, value=0, p: int = 2, prec: int = DEFAULT_PREC):
        require_prime(p)
        if prec < 1:
            raise DomainError("relative precision must be positive")
        self.p = p
        if isinstance(value, Padic):
            if value.p != p:
                raise DomainError("mixing different primes")
            self._val, self._unit, self._prec = value._val, value._unit, value._prec
            if not value.is_zero() and value._prec > prec:
                self._prec = prec
                self._unit %= p**prec
            return
        if isinstance(value, int):
            value = Fraction(value)
        elif isinstance(value, Rational):
            value = Fraction(value.numerator, value.denominator)
        else:
            raise TypeError(f"cannot build a p-adic number from {type(value).__name__}")
        if value == 0:
            self._val, self._unit, self._prec = prec, 0, 0
            return
        vn, un = _split(value.numerator, p)
        vd, ud = _split(value.denominator, p)
        mod = p**prec
        self._val = vn - vd
        self._unit = un * pow(ud, -1, mod) % mod
        self._prec = prec

    # -- alternative constructors -------------------------------------------------
    @classmethod
    def _make(cls, p: int, val: int, unit: int, prec: int) -> Padic:
        obj = object.__new__(cls)
        obj.p, obj._val, obj._unit, obj._prec = p, val, unit, prec
        return obj

    @classmethod
    def zero(cls, p: int, absprec: int) -> Padic:
        return cls._make(p, absprec, 0, 0)

    @classmethod
    def from_residue(cls, a: int, p: int, absprec: int, shift: int = 0) -> Padic:
        """The element ``p^shift * a + O(p^(shift + absprec))``."""
        a %= p**absprec
        if a == 0:
            return cls.zero(p, absprec + shift)
        v, u = _split(a, p)
        return cls._make(p, v + shift, u, absprec - v)

    def _like(self, value) -> Padic:
        """Coerce an exact number so that it never limits precision against ``self``."""
        if isinstance(value, Padic):
            if value.p != self.p:
                raise DomainError("mixing different primes")
            return value
        if value == 0:
            return Padic.zero(self.p, max(self.absprec, 1))
        v = padic_valuation(value, self.p)
        rel = max(self.absprec - v, self._prec, 1)
        return Padic(value, self.p, rel)

    # -- accessors ------------------------------------------------------------------
    @property
    def valuation(self):
        return INFINITY if self._unit == 0 else self._val

    @property
    def unit(self) -> int:
        return self._unit

    @property
    def relprec(self) -> int:
        return self._prec

    @property
    def absprec(self) -> int:
        return self._val + self._prec

    def is_zero(self) -> bool:
        return self._unit == 0

    def is_unit(self) -> bool:
        return self._unit != 0 and self._val == 0

    def unit_digits(self) -> list[int]:
        """Base-p digits of the unit part, least significant first."""
        out, u = [], self._unit
        for _ in range(self._prec):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def lift(self):
        """Canonical exact representative: ``p^v * u`` as int or Fraction."""
        if self._unit == 0:
            return 0
        if self._val >= 0:
            return self._unit * self.p**self._val
        return Fraction(self._unit, self.p ** (-self._val))

    def residue(self, n: int | None = None) -> int:
        """Integral element reduced modulo ``p^n`` (default: its absolute precision)."""
        n = self.absprec if n is None else n
        if n > self.absprec:
            raise PrecisionError(f"element only known modulo {self.p}^{self.absprec}")
        if self._unit == 0:
            return 0
        if self._val < 0:
            raise DomainError("element is not integral")
        return self._unit * self.p**self._val % self.p**n

    def centered_lift(self):
        """Representative of smallest absolute value (useful for known integers)."""
        if self._unit == 0:
            return 0
        mod = self.p**self._prec
        u = self._unit if self._unit <= mod // 2 else self._unit - mod
        if self._val >= 0:
            return u * self.p**self._val
        return Fraction(u, self.p ** (-self._val))

    def add_bigoh(self, absprec: int) -> Padic:
        if absprec >= self.absprec:
            return self
        if self._unit == 0 or absprec <= self._val:
            return Padic.zero(self.p, absprec)
        prec = absprec - self._val
        return Padic._make(self.p, self._val, self._unit % self.p**prec, prec)

    # -- arithmetic -----------------------------------------------------------------
    def __neg__(self) -> Padic:
        if self._unit == 0:
            return self
        return Padic._make(self.p, self._val, -self._unit % self.p**self._prec, self._prec)

    def __add__(self, other) -> Padic:
        if not isinstance(other, (Padic, int, Fraction)):
            return NotImplemented
        other = self._like(other)
        p = self.p
        n = min(self.absprec, other.absprec)
        if self._unit == 0:
            return other.add_bigoh(n)
        if other._unit == 0:
            return self.add_bigoh(n)
        vmin = min(self._val, other._val)
        s = (self._unit * p ** (self._val - vmin) + other._unit * p ** (other._val - vmin)) % p ** (n - vmin)
        return Padic.from_residue(s, p, n - vmin, shift=vmin)

    __radd__ = __add__

    def __sub__(self, other) -> Padic:
        if not isinstance(other, (Padic, int, Fraction)):
            return NotImplemented
        return self + (-self._like(other))

    def __rsub__(self, other) -> Padic:
        return self._like(other) - self

    def __mul__(self, other) -> Padic:
        if not isinstance(other, (Padic, int, Fraction)):
            return NotImplemented
        other = self._like(other)
        if self._unit == 0 or other._unit == 0:
            # for a zero operand _val is its absolute precision
            return Padic.zero(self.p, self._val + other._val)
        prec = min(self._prec, other._prec)
        unit = self._unit * other._unit % self.p**prec
        return Padic._make(self.p, self._val + other._val, unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> Padic:
        if self._unit == 0:
            raise PrecisionError("cannot invert an element indistinguishable from zero")
        mod = self.p**self._prec
        return Padic._make(self.p, -self._val, pow(self._unit, -1, mod), self._prec)

    def __truediv__(self, other) -> Padic:
        if not isinstance(other, (Padic, int, Fraction)):
            return NotImplemented
        return self * self._like(other).inverse()

    def __rtruediv__(self, other) -> Padic:
        return self._like(other) * self.inverse()

    def __pow__(self, n: int) -> Padic:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Padic(1, self.p, max(self._prec, 1))
        if self._unit == 0:
            return Padic.zero(self.p, n * self._val) if self._val >= 0 else Padic.zero(self.p, self._val)
        mod = self.p**self._prec
        return Padic._make(self.p, n * self._val, pow(self._unit, n, mod), self._prec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Padic, int, Fraction)):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except DomainError:
            return False

    __hash__ = None  # equality is only "equal at precision"

    def __repr__(self) -> str:
        p = self.p
        if self._unit == 0:
            return f"O({p}^{self._val})"
        head = f"{self._unit}" if self._val == 0 else f"{p}^{self._val} * {self._unit}"
        return f"{head} + O({p}^{self.absprec})"

    # -- serialization ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.p,
            "valuation": "+inf" if self._unit == 0 else self._val,
            "unit_digits": self.unit_digits(),
            "precision": self._prec,
            "absprec": self.absprec,
        }

    @classmethod
    def from_json(cls, data: dict) -> Padic:
        p = int(data["p"])
        if data["valuation"] == "+inf":
            return cls.zero(p, int(data["absprec"]))
        unit = sum(d * p**i for i, d in enumerate(data["unit_digits"]))
        return cls._make(p, int(data["valuation"]), unit, int(data["precision"]))


def as_padic(x, p: int, prec: int = DEFAULT_PREC) -> Padic:
    return x if isinstance(x, Padic) else Padic(x, p, prec)


def teichmuller(u: int, p: int, m: int) -> Padic:
    """The (p-1)-th root of unity congruent to ``u`` modulo ``p``, to precision ``p^m``."""
    require_prime(p)
    if u % p == 0:
        raise DomainError(f"{u} is not a unit modulo {p}")
    mod = p**m
    x = u % mod
    for _ in range(m + 1):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return Padic.from_residue(x, p, m)


def padic_log(z) -> Padic:
    r"""Iwasawa-free logarithm ``log_p`` on ``1 + pZ_p`` (``1 + 4Z_2`` for p = 2).

    The result carries the absolute precision of ``z``.
    """
    if not isinstance(z, Padic):
        raise TypeError("padic_log expects a Padic")
    p = z.p
    need = 2 if p == 2 else 1
    x = z - 1
    if z.valuation != 0 or x.valuation < need:
        raise DomainError(f"log_{p} is only defined here on 1 + {p**need}Z_{p}")
    n_abs = z.absprec
    if x.is_zero():
        return Padic.zero(p, n_abs)
    xr = x.residue()
    vx = x.valuation
    total = 0
    n = 1
    mod = p**n_abs
    while True:
        a = _int_valuation(n, p)
        if n * vx - a >= n_abs and n > 1:
            # the bound n*vx - log_p(n) is increasing, so all later terms vanish too
            break
        term = pow(xr, n, mod * p**a) // p**a
        term = term * pow(n // p**a, -1, mod)
        total += term if n % 2 else -term
        n += 1
    return Padic.from_residue(total, p, n_abs)


def padic_exp(z) -> Padic:
    """``exp_p`` on ``pZ_p`` (``4Z_2`` for p = 2), to the absolute precision of ``z``."""
    if not isinstance(z, Padic):
        raise TypeError("padic_exp expects a Padic")
    p = z.p
    need = 2 if p == 2 else 1
    if z.valuation < need:
        raise DomainError(f"exp_{p} converges only on {p**need}Z_{p}")
    n_abs = z.absprec
    if z.is_zero():
        return Padic.from_residue(1, p, n_abs)
    xr = z.residue()
    vx = z.valuation
    mod = p**n_abs
    total = 1
    fact_v, fact_u = 0, 1
    n = 1
    while Fraction(n) * (vx - Fraction(1, p - 1)) < n_abs:
        a, u = _split(n, p)
        fact_v += a
        fact_u *= u
        term = pow(xr, n, mod * p**fact_v) // p**fact_v
        total += term * pow(fact_u, -1, mod)
        n += 1
    return Padic.from_residue(total, p, n_abs)


def padic_sqrt(x: Padic) -> Padic:
    """Square root in Q_p; raises :class:`NotInGroundFieldError` when none exists."""
    p = x.p
    if x.is_zero():
        return Padic.zero(p, x.absprec // 2)
    if x.valuation % 2:
        raise NotInGroundFieldError("odd valuation: square root is ramified over Q_p")
    u, m = x.unit, x.relprec
    if p == 2:
        if m < 3:
            raise PrecisionError("need at least 3 digits to decide squares in Q_2")
        if u % 8 != 1:
            raise NotInGroundFieldError("2-adic unit not congruent to 1 mod 8")
        r = 1
        for i in range(3, m):
            if (r * r - u) % 2 ** (i + 1):
                r += 2 ** (i - 1)
        return Padic.from_residue(r, p, m - 1, shift=x.valuation // 2)
    r0 = sqrt_mod(u % p, p)
    if r0 is None:
        raise NotInGroundFieldError(f"unit part is not a square modulo {p}")
    mod = p**m
    r = r0
    for _ in range(m.bit_length() + 1):
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
    return Padic.from_residue(r, p, m, shift=x.valuation // 2)


def _root_key(r: Padic):
    return (r.valuation, r.unit)


def quad_roots_padic(b, c, p: int, prec: int = DEFAULT_PREC) -> tuple[Padic, Padic]:
    """Both roots of ``X^2 + bX + c`` in Q_p, smaller valuation first.

    ``b`` and ``c`` may be exact numbers (lifted with ``prec`` relative digits)
    or :class:`Padic`. Raises :class:`NotInGroundFieldError` when the roots
    generate a ramified or unramified extension.

    Distinct Newton slopes: the dominant root is the fixed point of the
    contraction ``r -> -b - c/r``. Equal slopes: rescale to a unit constant
    term and take the p-adic square root of the discriminant.
    """
    require_prime(p)
    b, c = as_padic(b, p, prec), as_padic(c, p, prec)
    vb, vc = b.valuation, c.valuation
    if b.is_zero() and c.is_zero():
        z = Padic.zero(p, min(b.absprec, c.absprec // 2))
        return z, z
    if 2 * vb < vc:
        r = -b
        for _ in range(4 * (b.absprec + c.absprec - 2 * vb) + 8):
            nxt = -b - c / r
            if nxt.valuation == r.valuation and nxt.unit == r.unit and nxt.relprec == r.relprec:
                break
            r = nxt
        r1 = r
        r2 = c / r1
        return r1, r2
    if vc % 2:
        raise NotInGroundFieldError("equal slopes with odd valuation: roots are ramified")
    s = vc // 2
    ps = Padic(p, p, max(b.absprec, c.absprec) + 1) ** s
    bs = b / ps
    cs = c / (ps * ps)
    disc = bs * bs - 4 * cs
    if disc.is_zero():
        # a double root is only determined to half the discriminant's precision
        n = disc.absprec // 2 - (1 if p == 2 else 0)
        root = (-bs / 2).add_bigoh(n) * ps
        return root, root
    sq = padic_sqrt(disc)
    r1 = (-bs + sq) / 2 * ps
    r2 = (-bs - sq) / 2 * ps
    if _root_key(r2) < _root_key(r1):
        r1, r2 = r2, r1
    return r1, r2
