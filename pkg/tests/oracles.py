"""Independent reference implementations used only by the tests.

Each one takes a deliberately different route from the library code it
checks, and favours obviousness over speed.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations


def sigma_bruteforce(k: int, n: int) -> int:
    """``sum_{d | n} d^k`` by trial division."""
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def deprived_sigma_bruteforce(k: int, n: int, p: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0 and d % p)


def partitions_pentagonal(n_max: int) -> list[int]:
    """p(0..n_max) from Euler's pentagonal recurrence."""
    part = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * part[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * part[n - g2]
            k += 1
        part[n] = total
    return part


def tau_by_product(n_max: int) -> list[int]:
    """tau(0..n_max) from ``q prod (1 - q^n)^24``, one factor at a time."""
    size = n_max  # coefficients of prod up to q^(n_max - 1)
    series = [1] + [0] * (size - 1) if size else []
    for m in range(1, size):
        for _ in range(24):
            for i in range(size - 1, m - 1, -1):
                series[i] -= series[i - m]
    return [0] + series


def legendre_symbol(a: int, p: int) -> int:
    """Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def p_valuation(n, p: int):
    if n == 0:
        return float("inf")
    n = Fraction(n)
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# -- polynomials as ascending coefficient lists ------------------------------------------

def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def fredholm_by_minors(m) -> list:
    """``det(1 - X m)`` ascending, via cofactor expansion memoised on column sets."""
    n = len(m)
    entries = [[[1 if i == j else 0, -m[i][j]] for j in range(n)] for i in range(n)]
    memo = {}

    def det(row: int, cols: int):
        if row == n:
            return [1]
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = [0]
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            e = entries[row][j]
            if e[0] or e[1]:
                minor = det(row + 1, cols | 1 << j)
                term = poly_mul(e, minor)
                total = poly_add(total, term if sign == 1 else [-c for c in term])
            sign = -sign
        memo[key] = total
        return total

    out = det(0, 0)
    return (out + [0] * (n + 1))[: n + 1]


def fredholm_by_permutations(m) -> list:
    """``det(1 - X m)`` ascending from the Leibniz formula; only for small sizes."""
    n = len(m)
    total = [0] * (n + 1)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = [1]
        for i, j in enumerate(perm):
            term = poly_mul(term, [1 if i == j else 0, -m[i][j]])
            if not any(term):
                break
        sign = -1 if inversions % 2 else 1
        for d, c in enumerate(term):
            total[d] += sign * c
    return total


def kron(a, b):
    n, k = len(a), len(b)
    return [[a[i // k][j // k] * b[i % k][j % k] for j in range(n * k)] for i in range(n * k)]


def matmul(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]
