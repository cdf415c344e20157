r"""
Triple products: balanced weights, the degree-8 Euler factor and numerical
partial Euler products.

For three eigenforms with Satake pairs ``(alpha_j, beta_j)`` at ``p`` the
local factor is ``prod_eta (1 - lambda_eta X)`` over the eight products
``lambda_eta`` of one parameter per form. Its power sums factor as
``sum_eta lambda_eta^m = prod_j (alpha_j^m + beta_j^m)``, and each factor
obeys the recurrence of ``X^2 - a_j X + t_j``; Newton's identities then
give the coefficients without ever leaving Q.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .arith import DEFAULT_PREC, Padic
from .characters import DirichletCharacter, RootOfUnity
from .errors import DomainError, PoleError
from .hecke import HeckeLocalData
from .qseries import tau


@dataclass(frozen=True)
class TripleWeights:
    """Weights stored in decreasing order ``k1 >= k2 >= k3``."""

    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        a, b, c = sorted((self.k1, self.k2, self.k3), reverse=True)
        object.__setattr__(self, "k1", a)
        object.__setattr__(self, "k2", b)
        object.__setattr__(self, "k3", c)

    @classmethod
    def parse(cls, text: str) -> TripleWeights:
        parts = [int(x) for x in text.split(",")]
        if len(parts) != 3:
            raise DomainError("expected three comma-separated weights")
        return cls(*parts)

    @property
    def total(self) -> int:
        return self.k1 + self.k2 + self.k3

    @property
    def balanced(self) -> bool:
        return is_balanced(self)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)

    def to_json(self) -> dict:
        return {"weights": list(self.as_tuple()), "balanced": self.balanced}


def is_balanced(w: TripleWeights) -> bool:
    return w.k3 >= 2 and w.k1 <= w.k2 + w.k3 - 2


@dataclass(frozen=True)
class TripleLocalData:
    """Three sets of local data at a common prime and the value ``chi(p)``.

    ``chi_p=None`` means ``chi(p) = 0``; the prime then contributes the
    trivial factor 1 to the twisted L-function.
    """

    forms: tuple[HeckeLocalData, HeckeLocalData, HeckeLocalData]
    chi_p: RootOfUnity | None = field(default_factory=RootOfUnity)

    def __post_init__(self):
        forms = tuple(self.forms)
        if len(forms) != 3:
            raise DomainError("need exactly three forms")
        if len({d.p for d in forms}) != 1:
            raise DomainError("local data must share the prime")
        object.__setattr__(self, "forms", forms)

    @property
    def p(self) -> int:
        return self.forms[0].p

    @property
    def weights(self) -> TripleWeights:
        return TripleWeights(*(d.k for d in self.forms))


@dataclass(frozen=True)
class Degree8Factor:
    """``sum c_i X^i = prod_eta (1 - lambda_eta X)``, ascending, ``c_0 = 1``."""

    p: int
    coeffs: tuple
    ring: str

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        if self.ring == "complex":
            coeffs = [[c.real, c.imag] for c in self.coeffs]
        elif self.ring == "padic":
            coeffs = [c.to_json() for c in self.coeffs]
        else:
            coeffs = [str(c) for c in self.coeffs]
        return {"p": self.p, "ring": self.ring, "coefficients": coeffs}


def _power_sums(a, t, count: int, one) -> list:
    """``alpha^m + beta^m`` for ``m < count`` with ``alpha + beta = a``, ``alpha beta = t``."""
    sums = [one + one, a]
    while len(sums) < count:
        sums.append(a * sums[-1] - t * sums[-2])
    return sums[:count]


def _coeffs_from_power_sums(power_sums, one) -> list:
    """Coefficients of ``prod (1 - lambda X)`` from ``P_m = sum lambda^m`` (Newton's identities)."""
    e = [one]
    for i in range(1, len(power_sums)):
        acc = 0 * one
        for j in range(1, i + 1):
            term = e[i - j] * power_sums[j]
            acc = acc + term if j % 2 else acc - term
        e.append(acc / i)
    return [c if i % 2 == 0 else -c for i, c in enumerate(e)]


def _trim(coeffs, is_zero):
    out = list(coeffs)
    while len(out) > 1 and is_zero(out[-1]):
        out.pop()
    return tuple(out)


def degree8_euler_factor(d: TripleLocalData, ring: str = "exact") -> Degree8Factor:
    """The local factor in the requested ring: ``exact``, ``complex`` or ``padic``.

    ``exact`` needs rational ``a_p`` and ``psi(p)``; the coefficients are
    computed in Q and integral inputs give integral output. ``complex``
    multiplies out the eight numerical reciprocal roots.
    """
    p = d.p
    if ring == "exact":
        pairs = [(Fraction(f.a_p), Fraction(f.constant_term("exact"))) for f in d.forms]
        coeffs = _exact_coeffs(pairs)
        if all(c.denominator == 1 for c in coeffs):
            coeffs = [int(c) for c in coeffs]
        return Degree8Factor(p, _trim(coeffs, lambda c: c == 0), "exact")
    if ring == "complex":
        poly = [1 + 0j]
        for lam in reciprocal_roots_complex(d):
            poly = [c - lam * prev for c, prev in zip(poly + [0j], [0j] + poly)]
        return Degree8Factor(p, _trim(poly, lambda c: c == 0), "complex")
    if ring == "padic":
        return _padic_factor(d)
    raise DomainError(f"unknown ring {ring!r}")


def reciprocal_roots_complex(d: TripleLocalData) -> list[complex]:
    """The eight products ``lambda_eta``, with ``eta`` in lexicographic order."""
    roots = [1 + 0j]
    for f in d.forms:
        r1, r2 = f.satake_complex
        roots = [x * r for x in roots for r in (r1, r2)]
    return roots


def _exact_coeffs(pairs) -> list[Fraction]:
    sums = [_power_sums(a, t, 9, Fraction(1)) for a, t in pairs]
    products = [s1 * s2 * s3 for s1, s2, s3 in zip(*sums)]
    return _coeffs_from_power_sums(products, Fraction(1))


def _padic_factor(d: TripleLocalData) -> Degree8Factor:
    p = d.p
    prec = min(f.prec for f in d.forms)
    if all(f.psi_p is None or f.psi_p.as_int() is not None for f in d.forms):
        exact = degree8_euler_factor(d, "exact").coeffs
        coeffs = [Padic(c, p, prec) if c else Padic.zero(p, prec) for c in exact]
        return Degree8Factor(p, tuple(coeffs), "padic")
    # non-real psi(p): Newton's identities directly in Q_p
    one = Padic(1, p, prec)
    sums = []
    for f in d.forms:
        a = Padic(f.a_p, p, prec) if f.a_p else Padic.zero(p, prec)
        sums.append(_power_sums(a, f.constant_term("padic"), 9, one))
    products = [s1 * s2 * s3 for s1, s2, s3 in zip(*sums)]
    coeffs = _coeffs_from_power_sums(products, one)
    return Degree8Factor(p, _trim(coeffs, lambda c: c.is_zero()), "padic")


@dataclass(frozen=True)
class PartialLValue:
    """A truncated Dirichlet series or Euler product with a crude tail bound."""

    value: complex
    bound: int
    tail_estimate: float
    convergent: bool = True

    def to_json(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "bound": self.bound,
            "tail_estimate": self.tail_estimate,
            "convergent": self.convergent,
        }


def _as_character(chi) -> DirichletCharacter:
    return DirichletCharacter.trivial(1) if chi is None else chi


def dirichlet_L_partial(coeffs, chi, s, n_terms: int, k: int) -> PartialLValue:
    """``sum_{n <= n_terms} chi(n) a_n n^(-s)`` for a weight-``k`` cusp form.

    ``coeffs[n]`` is ``a_n`` (index 0 ignored). The tail bound assumes
    ``|a_n| <= 2 n^((k+1)/2)``; outside ``Re s > (k+1)/2 + 1`` it is
    reported as infinite and ``convergent`` is False.
    """
    if n_terms < 1:
        raise DomainError("need at least one term")
    if len(coeffs) <= n_terms:
        raise DomainError(f"need coefficients up to index {n_terms}")
    chi = _as_character(chi)
    s = complex(s)
    total = 0j
    for n in range(1, n_terms + 1):
        c = chi.value_complex(n)
        if c and coeffs[n]:
            total += c * float(coeffs[n]) * cmath.exp(-s * math.log(n))
    excess = s.real - (k + 1) / 2 - 1
    if excess > 0:
        tail = 2 * n_terms ** (-excess) / excess
        return PartialLValue(total, n_terms, tail, True)
    return PartialLValue(total, n_terms, math.inf, False)


def triple_L_partial(local_data, s, chi=None) -> PartialLValue:
    """``prod_p Euler_p(chi(p) p^(-s))^(-1)`` over the given primes, in increasing order.

    Each entry of ``local_data`` is a :class:`TripleLocalData`; ``chi`` (a
    Dirichlet character) overrides their stored ``chi_p``. The tail estimate
    bounds ``|log|`` of the missing factors assuming all eight reciprocal
    roots have absolute value ``p^((k1+k2+k3-3)/2)``.
    """
    s = complex(s)
    data = sorted(local_data, key=lambda d: d.p)
    value = 1 + 0j
    for d in data:
        chi_p = d.chi_p if chi is None else chi(d.p)
        if chi_p is None:
            continue
        x = chi_p.to_complex() * cmath.exp(-s * math.log(d.p))
        # the factored form avoids overflow in the expanded coefficients
        local = 1 + 0j
        for lam in reciprocal_roots_complex(d):
            local *= 1 - lam * x
        if abs(local) < 1e-300:
            raise PoleError(f"local factor at p = {d.p} vanishes at s = {s}")
        value /= local
    if not data:
        return PartialLValue(value, 1, 0.0, True)
    bound = data[-1].p
    excess = s.real - (data[0].weights.total - 3) / 2 - 1
    if excess > 0:
        return PartialLValue(value, bound, 8 * bound ** (-excess) / excess, True)
    return PartialLValue(value, bound, math.inf, False)


def named_local_data(name: str, p: int, prec: int = DEFAULT_PREC, weight: int | None = None) -> HeckeLocalData:
    """Local data of a level-one eigenform: ``delta`` or the Eisenstein series ``e<k>``."""
    if name == "delta":
        return HeckeLocalData(p, tau(p), 12, prec=prec)
    if name.startswith("e") and name[1:].isdigit():
        k = int(name[1:])
        if k < 4 or k % 2:
            raise DomainError("Eisenstein weight must be even and at least 4")
        return HeckeLocalData(p, 1 + p ** (k - 1), k, prec=prec)
    if name == "hk" and weight is not None:
        return named_local_data(f"e{weight}", p, prec)
    raise DomainError(f"unknown form {name!r}")


def triple_data_upto(names, bound: int, chi=None, prec: int = DEFAULT_PREC) -> list[TripleLocalData]:
    """Local data at every prime ``p <= bound`` for a triple of named forms."""
    from sympy import primerange

    out = []
    for p in primerange(2, bound + 1):
        chi_p = RootOfUnity() if chi is None else chi(p)
        out.append(TripleLocalData(tuple(named_local_data(n, p, prec) for n in names), chi_p))
    return out


def gamma_C(z) -> complex:
    """``2 (2 pi)^(-z) Gamma(z)``."""
    z = mpmath.mpmathify(z)
    return complex(2 * (2 * mpmath.pi) ** (-z) * mpmath.gamma(z))


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == int(z.real)


def gamma_normalization(w: TripleWeights, s) -> complex:
    """``Gamma_C(s) Gamma_C(s-k3+1) Gamma_C(s-k2+1) Gamma_C(s-k1+1)``."""
    s = complex(s)
    factors = [("Gamma_C(s)", s), ("Gamma_C(s-k3+1)", s - w.k3 + 1),
               ("Gamma_C(s-k2+1)", s - w.k2 + 1), ("Gamma_C(s-k1+1)", s - w.k1 + 1)]
    value = 1 + 0j
    for label, z in factors:
        if _is_pole(z):
            raise PoleError(f"{label} has a pole: argument {z.real:g} at s = {s.real:g}")
        value *= gamma_C(z.real if z.imag == 0 else z)
    return value


@dataclass(frozen=True)
class CriticalSet:
    values: tuple[int, ...]
    center: Fraction
    diagnostic: str | None = None

    def to_json(self) -> dict:
        return {"values": list(self.values), "center": str(self.center), "diagnostic": self.diagnostic}


def functional_eq_reflect(w: TripleWeights, s):
    return w.total - 2 - s


def critical_values(w: TripleWeights) -> CriticalSet:
    """Integers ``k1 .. k2+k3-2``; empty with a diagnostic when unbalanced."""
    center = Fraction(w.total - 2, 2)
    if not is_balanced(w):
        reason = "k3 < 2" if w.k3 < 2 else f"k1 = {w.k1} exceeds k2 + k3 - 2 = {w.k2 + w.k3 - 2}"
        return CriticalSet((), center, f"weights {w.as_tuple()} are not balanced: {reason}")
    return CriticalSet(tuple(range(w.k1, w.k2 + w.k3 - 1)), center)


def interpolation_points(w: TripleWeights) -> list[tuple[int, int]]:
    """Pairs ``(r, s)`` with ``s = k2+k3-2-r`` for ``r = 0 .. k2+k3-k1-2``."""
    if not is_balanced(w):
        return []
    return [(r, w.k2 + w.k3 - 2 - r) for r in range(w.k2 + w.k3 - w.k1 - 1)]


def admissibility_H(*slopes) -> int:
    """``[2 (s1 + s2 + s3)] + 1`` for the slopes of the three forms."""
    if len(slopes) == 1 and isinstance(slopes[0], (list, tuple)):
        slopes = tuple(slopes[0])
    values = [Fraction(x) for x in slopes]
    if any(v < 0 for v in values):
        raise DomainError("slopes must be non-negative")
    return math.floor(2 * sum(values)) + 1
