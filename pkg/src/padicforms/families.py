r"""
The p-adic weight space and the Eisenstein family.

Weight space ``X = Hom_cont((Z/NZ)^* x Z_p^*, C_p^*)`` is handled through
its arithmetic points ``(r, chi)``, which send ``(y1, y2)`` to
``chi(y1) chi(y2 mod p^v) y2^r``. A p-adic weight ``s`` acts on units via
``d^(s-1) = omega(d)^j <d>^(s-1)`` with ``j`` the component of ``s - 1``
modulo ``p - 1``; this is how the Eisenstein coefficients
``sigma_{k-1}(n)`` interpolate in ``k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors

from .arith import DEFAULT_PREC, Padic, padic_exp, padic_log, padic_valuation, require_prime, teichmuller
from .characters import DirichletCharacter
from .errors import DomainError


def _crt(a: int, m: int, b: int, n: int) -> int:
    """The residue modulo ``m n`` congruent to ``a`` mod ``m`` and ``b`` mod ``n``."""
    if m == 1:
        return b % n
    if n == 1:
        return a % m
    return (a * n * pow(n, -1, m) + b * m * pow(m, -1, n)) % (m * n)


@dataclass(frozen=True)
class WeightSpacePoint:
    """Arithmetic point ``(r, chi)`` with ``chi`` a character modulo ``N p^v``."""

    N: int
    p: int
    v: int
    r: int
    character: DirichletCharacter = None

    def __post_init__(self):
        require_prime(self.p)
        if self.v < 1:
            raise DomainError("wild level v must be at least 1")
        if math.gcd(self.N, self.p) != 1:
            raise DomainError("tame modulus N must be prime to p")
        chi = self.character or DirichletCharacter.trivial(self.N * self.p**self.v)
        if chi.modulus != self.N * self.p**self.v:
            raise DomainError("character modulus must equal N p^v")
        object.__setattr__(self, "character", chi)

    @property
    def modulus(self) -> int:
        return self.N * self.p**self.v

    def has_full_conductor(self) -> bool:
        return self.character.has_full_conductor(self.N, self.p)

    def to_json(self) -> dict:
        return {"N": self.N, "p": self.p, "v": self.v, "r": self.r, "character": self.character.to_json()}


def eval_point(pt: WeightSpacePoint, y1: int, y2, prec: int = DEFAULT_PREC) -> Padic:
    """``chi(y1) chi(y2 mod p^v) y2^r`` in Q_p.

    ``chi(y1)`` means the tame component: ``chi`` at the residue that is
    ``y1`` mod N and 1 mod ``p^v``; similarly for the wild factor.
    """
    p, pv = pt.p, pt.p**pt.v
    if math.gcd(y1, pt.N) != 1:
        raise DomainError(f"{y1} is not a unit modulo {pt.N}")
    y2 = y2 if isinstance(y2, Padic) else Padic(y2, p, prec)
    if not y2.is_unit():
        raise DomainError("y2 must be a p-adic unit")
    if y2.absprec < pt.v:
        raise DomainError("y2 not known modulo p^v")
    chi = pt.character
    tame = chi(_crt(y1, pt.N, 1, pv))
    wild = chi(_crt(1, pt.N, y2.residue(pt.v), pv))
    value = tame.to_padic(p, prec) * wild.to_padic(p, prec)
    return value * y2**pt.r


def diamond(d, p: int, prec: int = DEFAULT_PREC) -> Padic:
    """``<d> = d / omega(d)``, the projection of a unit to ``1 + pZ_p``."""
    d = d if isinstance(d, Padic) else Padic(d, p, prec)
    if not d.is_unit():
        raise DomainError(f"{d} is not a p-adic unit")
    return d / teichmuller(d.residue(1), p, d.absprec)


def gap_power(d, s, j: int, p: int, prec: int = DEFAULT_PREC) -> Padic:
    """``omega(d)^j exp((s - 1) log <d>)``, the p-adic interpolation of ``d^(s-1)``.

    For an integer weight with ``s - 1 = j`` mod ``p - 1`` this equals
    ``d^(s-1)``. p = 2 is not supported.
    """
    require_prime(p)
    if p == 2:
        raise DomainError("gap_power is not implemented for p = 2")
    d = d if isinstance(d, Padic) else Padic(d, p, prec)
    if not d.is_unit():
        raise DomainError(f"{d} is not a p-adic unit")
    s = s if isinstance(s, Padic) else Padic(s, p, prec) if s != 0 else Padic.zero(p, prec)
    if s.valuation < 0:
        raise DomainError("weight must lie in Z_p")
    omega = teichmuller(d.residue(1), p, prec)
    log_d = padic_log((d / omega).add_bigoh(prec))
    return omega ** (j % (p - 1)) * padic_exp((log_d * (s - 1)).add_bigoh(prec))


def weight_component(k: int, p: int) -> int:
    """Component ``j = k - 1 mod (p - 1)`` used by the Eisenstein family at weight ``k``."""
    return (k - 1) % (p - 1)


def eis_family_coeff(n: int, s, p: int, j: int | None = None, prec: int = DEFAULT_PREC) -> Padic:
    """p-deprived divisor sum ``sum_{d | n, p∤d} d^(s-1)`` at a p-adic weight ``s``.

    ``j`` defaults to the component of an integer ``s``.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if j is None:
        if not isinstance(s, int):
            raise DomainError("give the component j for a non-integer weight")
        j = weight_component(s, p)
    total = Padic.zero(p, prec)
    for d in divisors(n):
        if d % p:
            total = total + gap_power(d, s, j, p, prec)
    return total


def deprived_divisor_sum(n: int, k: int, p: int) -> int:
    """``sigma^{(p)}_{k-1}(n)`` computed with integers."""
    return sum(d ** (k - 1) for d in divisors(n) if d % p)


def continuity_defect(n: int, k: int, k2: int, p: int, m: int):
    """``v_p(a_n(k) - a_n(k2))`` for the p-deprived Eisenstein coefficients.

    Requires ``k = k2`` mod ``(p - 1) p^m`` and ``p ∤ n``; the result is then
    at least ``m + 1`` (``math.inf`` when ``k = k2``).
    """
    require_prime(p)
    if m < 0:
        raise DomainError("m must be non-negative")
    if (k - k2) % ((p - 1) * p**m):
        raise DomainError(f"weights must agree modulo (p-1) p^m = {(p - 1) * p**m}")
    if n % p == 0:
        raise DomainError("n must be prime to p")
    return padic_valuation(deprived_divisor_sum(n, k, p) - deprived_divisor_sum(n, k2, p), p)


@dataclass(frozen=True)
class WeightDisc:
    """Integer weights ``k = center mod (p - 1) p^m`` and their p-adic closure."""

    p: int
    center: int
    m: int

    def __post_init__(self):
        require_prime(self.p)
        if self.m < 0:
            raise DomainError("radius exponent must be non-negative")

    def __contains__(self, k) -> bool:
        return isinstance(k, int) and (k - self.center) % ((self.p - 1) * self.p**self.m) == 0

    def sample(self, count: int, start: int = 0) -> list[int]:
        step = (self.p - 1) * self.p**self.m
        return [self.center + (start + i) * step for i in range(count)]


def eisenstein_unit_root(k: int, p: int, prec: int = DEFAULT_PREC) -> Padic:
    """U_p-eigenvalue of the ordinary stabilization of ``E_k``: the unit root 1."""
    return eis_family_coeff(p, k, p, prec=prec)


def weight_as_padic(k, p: int, prec: int = DEFAULT_PREC) -> Padic:
    if isinstance(k, Padic):
        return k
    k = Fraction(k)
    return Padic(k, p, prec) if k else Padic.zero(p, prec)
