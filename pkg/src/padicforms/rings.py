"""Coefficient rings for q-expansions.

A ring object knows how to coerce, normalize and serialize its elements;
elements themselves are plain Python numbers (``int``, ``Fraction``,
``complex``) or :class:`~padicforms.arith.Padic`, so the hot loops in
:mod:`padicforms.qseries` use ordinary operators.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .arith import Padic, require_prime
from .errors import DomainError


class Ring:
    tag = "?"
    exact = True
    zero = 0
    one = 1

    def coerce(self, x):
        raise NotImplementedError

    def normalize(self, x):
        return x

    def exact_div_int(self, x, n: int):
        """``x / n`` when it lies in the ring, else ``None``."""
        raise NotImplementedError

    def to_json(self, x):
        return str(x)

    def from_json(self, s):
        return self.coerce(int(s))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag


class IntegerRing(Ring):
    tag = "ZZ"

    def coerce(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise DomainError(f"{x!r} is not an integer")

    def exact_div_int(self, x, n):
        q, r = divmod(x, n)
        return None if r else q


class RationalField(Ring):
    tag = "QQ"

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise DomainError(f"{x!r} is not rational")

    def exact_div_int(self, x, n):
        return Fraction(x) / n

    def from_json(self, s):
        return Fraction(s)


class IntegersMod(Ring):
    """Z/mZ with residues stored as ints in ``[0, m)``."""

    def __init__(self, m: int):
        if m < 2:
            raise DomainError("modulus must be at least 2")
        self.m = m
        self.tag = f"Z/{m}Z"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.m) % self.m
        return int(x) % self.m

    def normalize(self, x):
        return x % self.m

    def exact_div_int(self, x, n):
        try:
            return x * pow(n, -1, self.m) % self.m
        except ValueError:
            return None


class PadicField(Ring):
    """Q_p with a default relative precision used when lifting exact numbers."""

    exact = False

    def __init__(self, p: int, prec: int):
        self.p = require_prime(p)
        self.prec = prec
        self.tag = f"Qp({p},{prec})"
        self.zero = Padic.zero(p, prec)
        self.one = Padic(1, p, prec)

    def coerce(self, x):
        if isinstance(x, Padic):
            if x.p != self.p:
                raise DomainError("prime mismatch")
            return x
        return Padic(x, self.p, self.prec)

    def exact_div_int(self, x, n):
        return x / n

    def to_json(self, x):
        return x.to_json()

    def from_json(self, s):
        return Padic.from_json(s)


class ComplexField(Ring):
    """Double-precision complex numbers; the only inexact archimedean ring."""

    tag = "CC"
    exact = False
    zero = 0j
    one = 1 + 0j

    def coerce(self, x):
        if isinstance(x, Padic):
            raise DomainError("no complex embedding of a p-adic number")
        return complex(x)

    def exact_div_int(self, x, n):
        return x / n

    def to_json(self, x):
        return [x.real, x.imag]

    def from_json(self, s):
        return complex(s[0], s[1])


ZZ = IntegerRing()
QQ = RationalField()
CC = ComplexField()


def ring_from_tag(tag: str) -> Ring:
    if tag == "ZZ":
        return ZZ
    if tag == "QQ":
        return QQ
    if tag == "CC":
        return CC
    m = re.fullmatch(r"Z/(\d+)Z", tag)
    if m:
        return IntegersMod(int(m.group(1)))
    m = re.fullmatch(r"Qp\((\d+),(\d+)\)", tag)
    if m:
        return PadicField(int(m.group(1)), int(m.group(2)))
    raise DomainError(f"unknown ring tag {tag!r}")
