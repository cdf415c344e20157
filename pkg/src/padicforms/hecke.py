r"""
Hecke and Atkin operators on q-expansions, Hecke polynomials, Satake
parameters and p-stabilization.

The Hecke polynomial at ``p`` is ``1 - a_p X + psi(p) p^(k-1) X^2``. Its
reciprocal roots are the Satake parameters; ``alpha1`` is always the root
of smaller p-adic valuation, so ``slope = v_p(alpha1)``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

from sympy import divisors

from .arith import DEFAULT_PREC, Padic, padic_valuation, quad_roots_padic, require_prime
from .characters import DirichletCharacter, RootOfUnity
from .errors import DomainError, PrecisionError
from .newton import newton_polygon
from .qseries import QSeries
from .rings import CC, PadicField


@dataclass(frozen=True)
class FormLabel:
    weight: int
    level: int
    character: DirichletCharacter = None
    check_parity: bool = True

    def __post_init__(self):
        if self.weight < 2 or self.level < 1:
            raise DomainError("need weight >= 2 and level >= 1")
        chi = self.character or DirichletCharacter.trivial(self.level)
        object.__setattr__(self, "character", chi)
        if chi.modulus != self.level:
            raise DomainError("character modulus must equal the level")
        if self.check_parity and chi.parity() != (-1) ** self.weight:
            raise DomainError("character parity is inconsistent with the weight")


@dataclass(frozen=True)
class HeckeLocalData:
    """Local data ``(p, a_p, psi(p), k)`` of an eigenform at a prime.

    ``psi_p=None`` stands for ``psi(p) = 0`` (p divides the level).
    """

    p: int
    a_p: int | Fraction
    k: int
    psi_p: RootOfUnity | None = field(default_factory=RootOfUnity)
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        require_prime(self.p)
        if self.k < 1:
            raise DomainError("weight must be positive")

    @property
    def norm(self) -> int:
        return self.p ** (self.k - 1)

    def constant_term(self, embedding: str = "exact"):
        """``psi(p) p^(k-1)`` in the requested embedding."""
        if self.psi_p is None:
            zeros = {"exact": 0, "complex": 0j, "padic": Padic.zero(self.p, self.prec)}
            if embedding not in zeros:
                raise DomainError(f"unknown embedding {embedding!r}")
            return zeros[embedding]
        if embedding == "exact":
            s = self.psi_p.as_int()
            if s is None:
                raise DomainError("psi(p) is not rational; use the complex or p-adic embedding")
            return s * self.norm
        if embedding == "complex":
            return self.psi_p.to_complex() * self.norm
        if embedding == "padic":
            return self.psi_p.to_padic(self.p, self.prec) * self.norm
        raise DomainError(f"unknown embedding {embedding!r}")

    @cached_property
    def slopes(self) -> tuple:
        """Newton slopes of the Hecke polynomial, ascending (``math.inf`` if psi(p) = 0)."""
        c2 = 0 if self.psi_p is None else self.norm
        if self.psi_p is None and self.a_p == 0:
            return (float("inf"), float("inf"))
        if c2 == 0:
            return (Fraction(padic_valuation(self.a_p, self.p)), float("inf"))
        poly = newton_polygon([1, -self.a_p, c2], self.p)
        return tuple(poly.slope_multiset())

    @property
    def equal_slopes(self) -> bool:
        return self.slopes[0] == self.slopes[1]

    @cached_property
    def satake_padic(self) -> tuple[Padic, Padic]:
        """``(alpha1, alpha2)`` in Q_p; raises :class:`NotInGroundFieldError` otherwise.

        Ties in valuation are broken by the unit residue (deterministic but
        arbitrary); :attr:`equal_slopes` flags that case.
        """
        a = Padic(self.a_p, self.p, self.prec) if self.a_p != 0 else Padic.zero(self.p, self.prec)
        return quad_roots_padic(-a, self.constant_term("padic"), self.p, self.prec)

    @cached_property
    def satake_complex(self) -> tuple[complex, complex]:
        """Roots of ``X^2 - a_p X + psi(p) p^(k-1)`` in C.

        When both roots are rational they are ordered like the p-adic pair;
        otherwise the root with non-negative imaginary part comes first.
        """
        a = complex(self.a_p)
        if self.psi_p is None:
            return a, 0j
        t = self.constant_term("complex")
        disc = a * a - 4 * t
        root = cmath.sqrt(disc)
        r1, r2 = (a + root) / 2, (a - root) / 2
        ordered = self._rational_order()
        if ordered is not None:
            return complex(ordered[0]), complex(ordered[1])
        if (r1.imag, r1.real) < (r2.imag, r2.real):
            r1, r2 = r2, r1
        return r1, r2

    def _rational_order(self):
        if self.psi_p is None or self.psi_p.as_int() is None:
            return None
        a = Fraction(self.a_p)
        t = self.constant_term("exact")
        disc = a * a - 4 * t
        if disc < 0:
            return None
        num, den = disc.numerator, disc.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is None or rd is None:
            return None
        s = Fraction(rn, rd)
        roots = sorted({(a + s) / 2, (a - s) / 2}, key=lambda r: (padic_valuation(r, self.p), r))
        return (roots[0], roots[-1])

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "a_p": str(self.a_p),
            "k": self.k,
            "psi_p": None if self.psi_p is None else self.psi_p.to_json(),
            "slopes": [str(s) for s in self.slopes],
            "equal_slopes": self.equal_slopes,
            "complex": [[z.real, z.imag] for z in self.satake_complex],
        }
        try:
            out["padic"] = [r.to_json() for r in self.satake_padic]
        except DomainError as exc:
            out["padic"] = {"error": type(exc).__name__, "message": str(exc)}
        return out


def _isqrt_exact(n: int):
    r = isqrt(n)
    return r if r * r == n else None


def hecke_polynomial(d: HeckeLocalData, embedding: str = "exact") -> tuple:
    """Coefficients ``(1, -a_p, psi(p) p^(k-1))`` of the Hecke polynomial in X."""
    c2 = d.constant_term(embedding)
    if embedding == "padic":
        return (Padic(1, d.p, d.prec), -Padic(d.a_p, d.p, d.prec) if d.a_p else Padic.zero(d.p, d.prec), c2)
    if embedding == "complex":
        return (1 + 0j, -complex(d.a_p), c2)
    return (1, -d.a_p, c2)


def satake_params(d: HeckeLocalData, embedding: str = "padic"):
    if embedding == "padic":
        return d.satake_padic
    if embedding == "complex":
        return d.satake_complex
    raise DomainError(f"unknown embedding {embedding!r}")


def _out_prec(f: QSeries, m: int, prec: int | None) -> int:
    available = (f.prec - 1) // m + 1 if f.prec else 0
    if prec is None:
        return available
    if prec > available:
        raise PrecisionError(f"need input precision >= {m * (prec - 1) + 1}, have {f.prec}")
    return prec


def hecke_T(m: int, f: QSeries, k: int, prec: int | None = None) -> QSeries:
    r"""Level-one ``T_m``: ``b_n = sum_{d | gcd(m, n)} d^(k-1) a_{mn/d^2}``."""
    if m < 1:
        raise DomainError("m must be positive")
    n_out = _out_prec(f, m, prec)
    ring = f.ring
    out = []
    for n in range(n_out):
        # gcd(m, 0) = m, so n = 0 gives sigma_{k-1}(m) a_0
        acc = ring.zero
        for d in divisors(gcd(m, n)):
            acc = acc + ring.coerce(d ** (k - 1)) * f[m * n // (d * d)]
        out.append(ring.normalize(acc))
    return QSeries._raw(out, ring)


def atkin_U(p: int, f: QSeries, prec: int | None = None) -> QSeries:
    """``U_p: sum a_n q^n -> sum a_{np} q^n``."""
    if p < 1:
        raise DomainError("p must be positive")
    n_out = _out_prec(f, p, prec)
    return QSeries._raw(f.coeffs[: p * (n_out - 1) + 1: p] if n_out else (), f.ring)


def frick_V(p: int, f: QSeries, prec: int | None = None) -> QSeries:
    """``V_p: f(q) -> f(q^p)``, known to ``O(q^(p * f.prec))`` unless truncated."""
    if p < 1:
        raise DomainError("p must be positive")
    n_out = p * f.prec if prec is None else prec
    if n_out > p * f.prec:
        raise PrecisionError(f"f(q^{p}) is only known to O(q^{p * f.prec})")
    ring = f.ring
    out = [ring.zero] * n_out
    for n in range(0, n_out, p):
        out[n] = f[n // p]
    return QSeries._raw(out, ring)


def stabilize_with(f: QSeries, p: int, beta) -> QSeries:
    """``f(z) - beta f(pz)``, i.e. ``a_n - beta a_{n/p}``."""
    ring = f.ring
    beta = ring.coerce(beta)
    vf = frick_V(p, f, prec=f.prec)
    return f - vf.scale(beta)


def p_stabilize(f: QSeries, d: HeckeLocalData, choice: str = "alpha", embedding: str = "complex"):
    """p-stabilize an eigenform, returning ``(f0, eigenvalue)``.

    ``choice="alpha"`` removes ``beta = alpha2`` and yields the ``U_p``
    eigenvalue ``alpha1``; ``choice="beta"`` swaps the roles. The series is
    moved to CC or to Q_p according to ``embedding``.
    """
    if choice not in ("alpha", "beta"):
        raise DomainError("choice must be 'alpha' or 'beta'")
    r1, r2 = satake_params(d, embedding)
    keep, drop = (r1, r2) if choice == "alpha" else (r2, r1)
    ring = CC if embedding == "complex" else PadicField(d.p, d.prec)
    g = f.change_ring(ring) if f.ring != ring else f
    return stabilize_with(g, d.p, drop), keep
