import random

import pytest
from hypothesis import given, settings, strategies as st

from models import random_kronecker, random_two_by_two
from oracles import fredholm_by_minors, fredholm_by_permutations, kron
from padicforms.arith import Padic
from padicforms.errors import DomainError, NoEigenvalueError, NotInGroundFieldError, PrecisionError, UnsupportedMultiplicityError
from padicforms.hecke import HeckeLocalData
from padicforms.qseries import tau
from padicforms.spectral import (
    FredholmSeries,
    PadicMatrix,
    berkowitz,
    eigen_coordinate,
    eigenvalues,
    eigenvector,
    fredholm_newton_polygon,
    fredholm_series,
    kron_oldspace,
    polynomial_roots_padic,
    resolved_eigenvalues,
    riesz_projector,
    up_oldspace_matrix,
)

DELTA_2 = HeckeLocalData(2, -24, 12, prec=30)

int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(int_matrices)
def test_berkowitz_matches_leibniz(m):
    assert list(fredholm_series(m).coeffs) == fredholm_by_permutations(m)


def test_berkowitz_matches_minors_on_eight_by_eight():
    rng = random.Random(7)
    for _ in range(5):
        m = [[rng.randint(-9, 9) for _ in range(8)] for _ in range(8)]
        assert berkowitz(m) == fredholm_by_minors(m)


@given(int_matrices, st.sampled_from([2, 3, 5]))
def test_padic_fredholm_reduces_exact_one(m, p):
    exact = fredholm_series(m).coeffs
    padic = fredholm_series(PadicMatrix(m, p, 25)).coeffs
    assert all(a == b for a, b in zip(padic, exact))


def test_fredholm_of_delta_oldspace():
    fs = fredholm_series(up_oldspace_matrix(DELTA_2))
    assert [c.centered_lift() for c in fs.coeffs] == [1, 24, 2048]
    assert fredholm_newton_polygon(up_oldspace_matrix(DELTA_2)).slope_multiset() == [3, 8]
    assert fs(0) == 1


def test_fredholm_series_constant_term():
    with pytest.raises(DomainError):
        FredholmSeries((2, 1))


def test_matrix_json_round_trip():
    m = up_oldspace_matrix(DELTA_2)
    assert PadicMatrix.from_json(m.to_json()) == m


def test_rank_at_precision():
    m = PadicMatrix([[1, 2], [2, 4]], 3, 10)
    assert m.rank_at_precision() == 1
    assert PadicMatrix.identity(3, 5).rank_at_precision() == 3


def test_polynomial_roots():
    # (X - 3)(X - 10)(X - 50) over Q_5
    coeffs = [1, -63, 3*10 + 3*50 + 10*50, -1500]
    roots, unresolved = polynomial_roots_padic([Padic(c, 5, 30) for c in coeffs], 5)
    assert unresolved == 0
    assert sorted(r.centered_lift() for r in roots) == [3, 10, 50]
    roots, unresolved = polynomial_roots_padic([Padic(c, 5, 30) for c in (1, 0, -2)], 5)
    assert unresolved == 2 and roots == []


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_oldspace_eigenvalues_are_satake_parameters(p):
    d = HeckeLocalData(p, tau(p), 12, prec=40)
    eig = eigenvalues(up_oldspace_matrix(d))
    a1, a2 = d.satake_padic
    assert eig[0] == a1 and eig[1] == a2


def test_projector_identities_delta():
    m = up_oldspace_matrix(DELTA_2)
    alpha, beta = eigenvalues(m)
    pa = riesz_projector(m, alpha).matrix
    pb = riesz_projector(m, beta).matrix
    assert pa @ pa == pa and pb @ pb == pb
    assert pa + pb == PadicMatrix.identity(2, 2, 30)
    assert m @ pa == pa.scale(alpha)
    assert riesz_projector(m, alpha, method="lagrange").matrix == pa
    assert pa.correct_digits() >= 20


def test_projector_errors():
    m = up_oldspace_matrix(DELTA_2)
    with pytest.raises(NoEigenvalueError):
        riesz_projector(m, 5)
    with pytest.raises(UnsupportedMultiplicityError):
        riesz_projector(PadicMatrix.identity(2, 3, 10), 1)
    with pytest.raises(PrecisionError):
        riesz_projector(m, eigenvalues(m)[0], min_digits=200)
    with pytest.raises(DomainError):
        riesz_projector(m, eigenvalues(m)[0], method="spectral")


def test_eigenvector_and_coordinates():
    m = up_oldspace_matrix(DELTA_2)
    alpha, beta = eigenvalues(m)
    vec, pivot = eigenvector(m, alpha)
    assert pivot == 0 and vec[0] == 1 and vec[1] == -beta
    assert m @ vec == [alpha * x for x in vec]
    assert eigen_coordinate(m, alpha, vec) == 1
    assert eigen_coordinate(m, alpha, eigenvector(m, beta)[0]).is_zero()


@settings(max_examples=40)
@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-9, 9), st.integers(0, 10**6))
def test_eigen_coordinate_is_linear(x, y, c, seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5, 7])
    m, eigs = random_two_by_two(rng, p)
    mat = PadicMatrix(m, p, 60)
    lam = eigenvalues(mat)[0]
    u, v = [x, y], [y - c, x + c]
    combo = [c * a + b for a, b in zip(u, v)]
    lhs = eigen_coordinate(mat, lam, combo)
    rhs = eigen_coordinate(mat, lam, u) * c + eigen_coordinate(mat, lam, v)
    assert lhs == rhs


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_random_two_by_two_projectors(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5, 7])
    m, eigs = random_two_by_two(rng, p)
    mat = PadicMatrix(m, p, 60)
    found = eigenvalues(mat)
    assert sorted(e.valuation for e in found) == sorted(Padic(e, p).valuation for e in eigs)
    projectors = [riesz_projector(mat, lam).matrix for lam in found]
    assert projectors[0] + projectors[1] == PadicMatrix.identity(2, p, 60)


def test_kronecker_oldspace_matches_exact_oracle():
    exact = kron_oldspace([DELTA_2] * 3, "exact")
    old = [[-24, 1], [-2048, 0]]
    assert exact == kron(kron(old, old), old)
    assert berkowitz(exact)[1] == 13824
    padic = kron_oldspace([DELTA_2] * 3, "padic")
    assert padic.n == 8


def test_eight_by_eight_eigenvalues_known():
    rng = random.Random(3)
    m, eigs, _ = random_kronecker(rng, 3)
    found = eigenvalues(PadicMatrix(m, 3, 200))
    assert sorted(e.valuation for e in found) == sorted(Padic(e, 3).valuation for e in eigs)
    for e in eigs:
        assert any(f == e for f in found)


def test_simple_eigenvalues_of_repeated_spectrum():
    d = HeckeLocalData(2, -24, 12, prec=200)
    m = kron_oldspace([d] * 3, "padic")
    found, unresolved = resolved_eigenvalues(m)
    alpha, beta = d.satake_padic
    assert unresolved == 6
    assert found[0] == alpha**3 and found[1] == beta**3
    proj = riesz_projector(m, found[0]).matrix
    assert proj @ proj == proj and m @ proj == proj.scale(found[0])
    with pytest.raises(NotInGroundFieldError):
        eigenvalues(m)
