"""Dirichlet characters with exact values.

A value of a character is a root of unity ``exp(2 pi i * phase)`` stored as
the rational ``phase`` in ``[0, 1)``. It is embedded into C, or into Q_p
when its order divides ``p - 1`` (sign values embed for every p).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from sympy import divisors, factorint, primitive_root

from .arith import DEFAULT_PREC, Padic, require_prime, teichmuller
from .errors import DomainError, NotInGroundFieldError


@dataclass(frozen=True)
class RootOfUnity:
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "phase", Fraction(self.phase) % 1)

    @classmethod
    def sign(cls, s: int) -> RootOfUnity:
        if s not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        return cls(Fraction(0) if s == 1 else Fraction(1, 2))

    @property
    def order(self) -> int:
        return self.phase.denominator

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        return RootOfUnity(self.phase + other.phase)

    def __pow__(self, n: int) -> RootOfUnity:
        return RootOfUnity(self.phase * n)

    def conjugate(self) -> RootOfUnity:
        return RootOfUnity(-self.phase)

    def as_int(self) -> int | None:
        """+1 or -1 for real values, otherwise ``None``."""
        if self.phase == 0:
            return 1
        if self.phase == Fraction(1, 2):
            return -1
        return None

    def to_complex(self) -> complex:
        s = self.as_int()
        if s is not None:
            return complex(s)
        return cmath.exp(2j * math.pi * float(self.phase))

    def to_padic(self, p: int, prec: int = DEFAULT_PREC) -> Padic:
        """Image under the embedding sending ``exp(2 pi i/(p-1))`` to ``omega(g)``, g the least primitive root."""
        s = self.as_int()
        if s is not None:
            return Padic(s, p, prec)
        require_prime(p)
        if (p - 1) % self.order:
            raise NotInGroundFieldError(f"root of unity of order {self.order} is not in Q_{p}")
        zeta = teichmuller(primitive_root(p), p, prec)
        return zeta ** int(self.phase * (p - 1))

    def to_json(self) -> str:
        return str(self.phase)


def _unit_group_generators(m: int) -> list[tuple[int, int]]:
    """Generators of (Z/mZ)^* with their orders, one cyclic factor each."""
    gens = []
    for q, e in sorted(factorint(m).items()):
        qe = q**e
        rest = m // qe
        local = []
        if q == 2:
            if e == 2:
                local = [(qe - 1, 2)]
            elif e >= 3:
                local = [(qe - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(primitive_root(qe), (q - 1) * q ** (e - 1))]
        for g, order in local:
            # CRT lift: g modulo q^e, 1 modulo the coprime part
            lift = g if rest == 1 else (g * rest * pow(rest, -1, qe) + qe * pow(qe, -1, rest)) % m
            gens.append((lift, order))
    return gens


class DirichletCharacter:
    """A Dirichlet character modulo ``modulus``.

    Build it from the images of the standard generators of (Z/MZ)^*
    (``DirichletCharacter(M, [phase, ...])``), or with :meth:`trivial` /
    :meth:`legendre`. Calling the character returns a :class:`RootOfUnity`,
    or ``None`` on non-units.
    """

    def __init__(self, modulus: int, images=None):
        if modulus < 1:
            raise DomainError("modulus must be positive")
        self.modulus = modulus
        self.generators = _unit_group_generators(modulus) if modulus > 1 else []
        if images is None:
            images = [0] * len(self.generators)
        if len(images) != len(self.generators):
            raise DomainError(f"expected {len(self.generators)} generator images")
        phases = []
        for (g, order), im in zip(self.generators, images):
            ph = im.phase if isinstance(im, RootOfUnity) else Fraction(im)
            if (ph * order) % 1:
                raise DomainError(f"image of generator {g} must have order dividing {order}")
            phases.append(ph % 1)
        self.images = tuple(phases)
        table = {}
        orders = [o for _, o in self.generators]
        for exps in product(*(range(o) for o in orders)):
            a, ph = 1, Fraction(0)
            for (g, _), e, im in zip(self.generators, exps, self.images):
                a = a * pow(g, e, modulus) % modulus
                ph += e * im
            table[a % modulus] = RootOfUnity(ph)
        if modulus == 1:
            table = {0: RootOfUnity()}
        self._table = table

    @classmethod
    def trivial(cls, modulus: int) -> DirichletCharacter:
        return cls(modulus)

    @classmethod
    def legendre(cls, p: int) -> DirichletCharacter:
        """The quadratic character modulo an odd prime."""
        require_prime(p)
        if p == 2:
            raise DomainError("no quadratic character modulo 2")
        return cls(p, [Fraction(1, 2)])

    def __call__(self, a: int) -> RootOfUnity | None:
        return self._table.get(a % self.modulus)

    def value_complex(self, a: int) -> complex:
        v = self(a)
        return 0j if v is None else v.to_complex()

    def value_padic(self, a: int, p: int, prec: int = DEFAULT_PREC) -> Padic:
        v = self(a)
        if v is None:
            return Padic.zero(p, prec)
        return v.to_padic(p, prec)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            raise DomainError("characters must share a modulus")
        return DirichletCharacter(self.modulus, [a + b for a, b in zip(self.images, other.images)])

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.modulus == other.modulus and self.images == other.images

    def __hash__(self):
        return hash((self.modulus, self.images))

    def __repr__(self):
        return f"DirichletCharacter({self.modulus}, {[str(x) for x in self.images]})"

    def units(self) -> list[int]:
        return sorted(self._table)

    def is_trivial(self) -> bool:
        return all(ph == 0 for ph in self.images)

    @property
    def order(self) -> int:
        return math.lcm(1, *(ph.denominator for ph in self.images))

    def parity(self) -> int:
        return self(-1).as_int()

    @cached_property
    def conductor(self) -> int:
        for d in divisors(self.modulus):
            if all(v.phase == 0 for a, v in self._table.items() if (a - 1) % d == 0):
                return d
        return self.modulus

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def has_full_conductor(self, n: int, p: int) -> bool:
        """True when every prime dividing ``n * p`` divides the conductor."""
        primes = set(factorint(n * p))
        return all(self.conductor % q == 0 for q in primes)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "generators": [g for g, _ in self.generators],
            "images": [str(ph) for ph in self.images],
            "conductor": self.conductor,
        }

    @classmethod
    def from_json(cls, data: dict) -> DirichletCharacter:
        return cls(int(data["modulus"]), [Fraction(x) for x in data["images"]])
