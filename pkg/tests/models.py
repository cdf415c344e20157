"""Random matrices with a known, distinct-slope spectrum."""
from __future__ import annotations

import random
from itertools import combinations

from oracles import kron, matmul


def unit(rng: random.Random, p: int, bound: int = 50) -> int:
    while True:
        u = rng.randint(-bound, bound)
        if u % p:
            return u


def oldspace_exact(alpha: int, beta: int) -> list[list[int]]:
    """Companion-shaped matrix with eigenvalues ``alpha`` and ``beta``."""
    return [[alpha + beta, 1], [-alpha * beta, 0]]


def unimodular(rng: random.Random, n: int) -> tuple[list[list[int]], list[list[int]]]:
    """A random integer matrix of determinant 1 and its inverse (products of elementary moves)."""
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        # a <- a * E(i, j, c), inv <- E(i, j, -c) * inv
        for r in range(n):
            a[r][j] += c * a[r][i]
        for col in range(n):
            inv[i][col] -= c * inv[j][col]
    return a, inv


def random_pair(rng: random.Random, p: int, slopes: tuple[int, int]) -> tuple[int, int]:
    return p ** slopes[0] * unit(rng, p), p ** slopes[1] * unit(rng, p)


def random_two_by_two(rng: random.Random, p: int):
    """(matrix, eigenvalues) for a conjugated oldspace matrix with distinct slopes."""
    s1 = rng.randint(0, 3)
    s2 = s1 + rng.randint(1, 4)
    alpha, beta = random_pair(rng, p, (s1, s2))
    g, g_inv = unimodular(rng, 2)
    m = matmul(matmul(g, oldspace_exact(alpha, beta)), g_inv)
    return m, [alpha, beta]


def distinct_subset_sums(gaps) -> bool:
    sums = [sum(c) for r in range(len(gaps) + 1) for c in combinations(gaps, r)]
    return len(set(sums)) == len(sums)


def random_kronecker(rng: random.Random, p: int, conjugate: bool = True):
    """(8x8 matrix, eigenvalues) for a triple Kronecker product with eight distinct slopes."""
    while True:
        gaps = [rng.randint(1, 5) for _ in range(3)]
        if distinct_subset_sums(gaps):
            break
    factors, pairs = [], []
    for gap in gaps:
        base = rng.randint(0, 2)
        alpha, beta = random_pair(rng, p, (base, base + gap))
        pairs.append((alpha, beta))
        factors.append(oldspace_exact(alpha, beta))
    m = kron(kron(factors[0], factors[1]), factors[2])
    if conjugate:
        g, g_inv = unimodular(rng, 8)
        m = matmul(matmul(g, m), g_inv)
    eigs = [a * b * c for a in pairs[0] for b in pairs[1] for c in pairs[2]]
    return m, eigs, pairs
