r"""
Finite-dimensional spectral theory of the Atkin operator over Q_p.

Matrices act on column vectors. The Fredholm series of ``M`` is
``det(1 - T M)``, whose coefficients are the characteristic-polynomial
coefficients read from the top; they are computed with Berkowitz's
division-free algorithm, so over Z_p no precision is lost beyond the
entries' own.

Riesz projectors are polynomials in ``M``: if ``chi(X) = (X - lam) h(X)``
then ``pi_lam = h(M) / h(lam)``, which equals the Lagrange product
``prod_{mu != lam} (M - mu) / (lam - mu)`` without needing the other
eigenvalues to lie in Q_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import DEFAULT_PREC, Padic, require_prime
from .errors import (
    DomainError,
    NoEigenvalueError,
    NotInGroundFieldError,
    PrecisionError,
    UnsupportedMultiplicityError,
)
from .hecke import HeckeLocalData
from .newton import NewtonPolygon, newton_polygon

MIN_DIGITS = 4


class PadicMatrix:
    """Square matrix of :class:`Padic` entries sharing one prime."""

    __slots__ = ("p", "rows")

    def __init__(self, rows, p: int, prec: int = DEFAULT_PREC):
        require_prime(p)
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("matrix must be square")
        self.p = p
        self.rows = tuple(
            tuple(x if isinstance(x, Padic) else (Padic(x, p, prec) if x != 0 else Padic.zero(p, prec)) for x in r)
            for r in rows
        )
        if any(x.p != p for r in self.rows for x in r):
            raise DomainError("entries must share the prime")

    @classmethod
    def identity(cls, n: int, p: int, prec: int = DEFAULT_PREC) -> PadicMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p, prec)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, PadicMatrix):
            cols = list(zip(*other.rows))
            return PadicMatrix([[_dot(r, c) for c in cols] for r in self.rows], self.p)
        return [_dot(r, other) for r in self.rows]

    def __add__(self, other: PadicMatrix) -> PadicMatrix:
        return PadicMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.p)

    def __sub__(self, other: PadicMatrix) -> PadicMatrix:
        return PadicMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.p)

    def scale(self, c) -> PadicMatrix:
        return PadicMatrix([[c * a for a in r] for r in self.rows], self.p)

    def add_scalar(self, c) -> PadicMatrix:
        return PadicMatrix(
            [[a + c if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self.rows)], self.p
        )

    def kron(self, other: PadicMatrix) -> PadicMatrix:
        n, m = self.n, other.n
        return PadicMatrix(
            [[self.rows[i // m][j // m] * other.rows[i % m][j % m] for j in range(n * m)] for i in range(n * m)],
            self.p,
        )

    def entries(self):
        return [x for r in self.rows for x in r]

    def min_valuation(self):
        return min(x.valuation for x in self.entries())

    def min_absprec(self) -> int:
        return min(x.absprec for x in self.entries())

    def correct_digits(self) -> int:
        """Digits known beyond the leading one: ``min absprec - min valuation``."""
        v = self.min_valuation()
        if v == float("inf"):
            return 0
        return self.min_absprec() - v

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def __eq__(self, other):
        if not isinstance(other, PadicMatrix):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def rank_at_precision(self) -> int:
        """Rank by p-adic Gaussian elimination with full pivoting on valuation."""
        rows = [list(r) for r in self.rows]
        rank = 0
        n = self.n
        cols = set(range(n))
        for _ in range(n):
            best = None
            for i in range(rank, n):
                for j in cols:
                    x = rows[i][j]
                    if not x.is_zero() and (best is None or x.valuation < rows[best[0]][best[1]].valuation):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            rows[rank], rows[i] = rows[i], rows[rank]
            piv = rows[rank][j]
            for r in range(rank + 1, n):
                if not rows[r][j].is_zero():
                    f = rows[r][j] / piv
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            cols.discard(j)
            rank += 1
        return rank

    def to_json(self) -> dict:
        return {"p": self.p, "rows": [[x.to_json() for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> PadicMatrix:
        return cls([[Padic.from_json(x) for x in r] for r in data["rows"]], int(data["p"]))

    def __repr__(self):
        return f"PadicMatrix(p={self.p}, rows={[list(r) for r in self.rows]})"


def _dot(r, c):
    acc = r[0] * c[0]
    for a, b in zip(r[1:], c[1:]):
        acc = acc + a * b
    return acc


def berkowitz(rows) -> list:
    """Characteristic polynomial ``det(X I - A)``, highest degree first.

    Division-free, so it runs over any commutative ring of Python numbers.
    """
    n = len(rows)
    if n == 0:
        return [1]
    vect = [1, -rows[0][0]]
    for r in range(1, n):
        col = [rows[i][r] for i in range(r)]
        row = [rows[r][j] for j in range(r)]
        toeplitz = [1, -rows[r][r]]
        v = col
        for _ in range(r):
            toeplitz.append(-sum(row[j] * v[j] for j in range(r)))
            v = [sum(rows[i][j] * v[j] for j in range(r)) for i in range(r)]
        vect = [
            sum(toeplitz[i - j] * vect[j] for j in range(max(0, i - len(toeplitz) + 1), min(i, r) + 1))
            for i in range(r + 2)
        ]
    return vect


def kron_exact(a, b):
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


@dataclass(frozen=True)
class FredholmSeries:
    """``det(1 - T M) = sum c_i T^i`` with ``c_0 = 1``; ``p`` is None for exact coefficients."""

    coeffs: tuple
    p: int | None = None

    def __post_init__(self):
        if self.coeffs[0] != 1:
            raise DomainError("constant coefficient of a Fredholm series must be 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_json(self) -> dict:
        if self.p is None:
            return {"p": None, "coefficients": [str(c) for c in self.coeffs]}
        return {"p": self.p, "coefficients": [c.to_json() for c in self.coeffs]}


def fredholm_series(m) -> FredholmSeries:
    """``det(1 - T M)`` for a :class:`PadicMatrix` or an exact int/Fraction matrix.

    For p-adic input the matrix is scaled by ``p^s`` to be integral,
    reduced to integers modulo ``p^N`` (``N`` the least absolute precision)
    and handed to :func:`berkowitz`; coefficient ``i`` is then known
    modulo ``p^(N - s i)``.
    """
    if not isinstance(m, PadicMatrix):
        return FredholmSeries(tuple(berkowitz([list(r) for r in m])), None)
    p = m.p
    vmin = m.min_valuation()
    s = 0 if vmin == float("inf") or vmin >= 0 else -vmin
    n_abs = m.min_absprec() + s
    mod = p**n_abs
    ints = [[int(Fraction(x.lift()) * p**s) % mod for x in r] for r in m.rows]
    cp = berkowitz(ints)
    coeffs = [Padic(1, p, max(n_abs, 1))]
    for i, c in enumerate(cp[1:], start=1):
        coeffs.append(Padic.from_residue(c, p, n_abs) / p ** (s * i))
    return FredholmSeries(tuple(coeffs), p)


def characteristic_polynomial(m: PadicMatrix) -> list[Padic]:
    """``det(X I - M)`` coefficients, highest degree first."""
    return list(fredholm_series(m).coeffs)


def fredholm_newton_polygon(m: PadicMatrix) -> NewtonPolygon:
    return newton_polygon(list(fredholm_series(m).coeffs), m.p)


def _horner(coeffs_high_first, x):
    acc = coeffs_high_first[0]
    for c in coeffs_high_first[1:]:
        acc = acc * x + c
    return acc


def polynomial_roots_padic(coeffs_high_first, p: int) -> tuple[list[Padic], int]:
    """Roots in Q_p of a monic polynomial that are simple modulo p after rescaling.

    For each integral Newton slope ``s`` the polynomial ``g(Y) = chi(p^s Y)``
    is normalized and reduced mod p; every simple nonzero root there lifts
    uniquely by Newton iteration. Returns ``(roots, unresolved)`` where
    ``unresolved`` counts roots this method cannot place in Q_p.
    """
    asc = list(reversed(coeffs_high_first))
    poly = newton_polygon(list(coeffs_high_first), p)
    roots, unresolved = [], 0
    for slope, mult in poly.slopes:
        if slope.denominator != 1:
            unresolved += mult
            continue
        s = int(slope)
        g = [c * Fraction(p) ** (s * j) for j, c in enumerate(asc)]
        vmin = min(c.valuation for c in g)
        gbar = [(c.unit % p) if c.valuation == vmin else 0 for c in g]
        dgbar = [(j * gbar[j]) % p for j in range(1, len(gbar))]
        found = []
        for u in range(1, p):
            if _eval_mod(gbar, u, p) == 0 and _eval_mod(dgbar, u, p) != 0:
                found.append(u)
        if len(found) != mult:
            unresolved += mult - len(found)
        dg = [j * g[j] for j in range(1, len(g))]
        for u in found:
            y = Padic(u, p, max(c.absprec for c in g) + 1)
            for _ in range(64):
                gy = _horner(list(reversed(g)), y)
                step = gy / _horner(list(reversed(dg)), y)
                nxt = y - step
                if nxt.unit == y.unit and nxt.relprec == y.relprec and nxt.valuation == y.valuation:
                    break
                y = nxt
            roots.append(y * Fraction(p) ** s)
    return roots, unresolved


def _eval_mod(coeffs_asc, x, p):
    acc = 0
    for c in reversed(coeffs_asc):
        acc = (acc * x + c) % p
    return acc


def resolved_eigenvalues(m: PadicMatrix) -> tuple[list[Padic], int]:
    """Simple eigenvalues of ``m`` that lie in Q_p, and how many roots were left unresolved."""
    chi = characteristic_polynomial(m)
    # char poly of det(XI - M) in X: coefficients high first are the Fredholm coefficients
    roots, unresolved = polynomial_roots_padic(chi, m.p)
    return sorted(roots, key=lambda r: (r.valuation, r.unit)), unresolved


def eigenvalues(m: PadicMatrix) -> list[Padic]:
    """All eigenvalues of ``m`` in Q_p, ordered by (valuation, unit).

    Raises :class:`NotInGroundFieldError` if some eigenvalue cannot be placed
    in Q_p by this method (non-integral slope, or a repeated root mod p).
    """
    roots, unresolved = resolved_eigenvalues(m)
    if unresolved:
        raise NotInGroundFieldError(f"{unresolved} eigenvalue(s) not resolved in Q_{m.p}")
    return roots


@dataclass(frozen=True)
class RieszProjector:
    matrix: PadicMatrix
    eigenvalue: Padic

    def to_json(self) -> dict:
        return {"eigenvalue": self.eigenvalue.to_json(), "matrix": self.matrix.to_json(),
                "correct_digits": self.matrix.correct_digits()}


def riesz_projector(m: PadicMatrix, lam, min_digits: int = MIN_DIGITS, method: str = "deflation") -> RieszProjector:
    """Spectral projector onto the ``lam``-eigenline of ``m``.

    ``method="deflation"`` evaluates ``h(M)/h(lam)`` with ``chi = (X - lam) h``;
    ``method="lagrange"`` multiplies ``(M - mu)/(lam - mu)`` over the other
    eigenvalues (which must then lie in Q_p). Results with fewer than
    ``min_digits`` correct digits raise :class:`PrecisionError`.
    """
    p = m.p
    lam = lam if isinstance(lam, Padic) else Padic(lam, p, m.min_absprec())
    chi = characteristic_polynomial(m)
    h = [chi[0]]
    for c in chi[1:-1]:
        h.append(h[-1] * lam + c)
    remainder = h[-1] * lam + chi[-1]
    if not remainder.is_zero():
        raise NoEigenvalueError(f"{lam} is not an eigenvalue at working precision")
    h_lam = _horner(h, lam)
    if h_lam.is_zero():
        raise UnsupportedMultiplicityError("eigenvalue is not simple at working precision")
    n = m.n
    if method == "deflation":
        acc = PadicMatrix.identity(n, p, m.min_absprec()).scale(h[0])
        for c in h[1:]:
            acc = (acc @ m).add_scalar(c)
        pi = acc.scale(h_lam.inverse())
    elif method == "lagrange":
        others = [mu for mu in eigenvalues(m) if not (mu - lam).is_zero()]
        if len(others) != n - 1:
            raise UnsupportedMultiplicityError("could not separate the other eigenvalues")
        pi = PadicMatrix.identity(n, p, m.min_absprec())
        for mu in others:
            pi = (pi @ m.add_scalar(-mu)).scale((lam - mu).inverse())
    else:
        raise DomainError(f"unknown projector method {method!r}")
    if pi.correct_digits() < min_digits:
        raise PrecisionError(f"projector has only {pi.correct_digits()} correct digits (< {min_digits})")
    return RieszProjector(pi, lam)


def eigenvector(m: PadicMatrix, lam, **kw) -> tuple[list[Padic], int]:
    """Normalized ``lam``-eigenvector and its pivot index.

    The vector is the column of ``pi_lam`` holding an entry of least
    valuation, scaled so that its first least-valuation coordinate is 1.
    """
    return _normalized_column(riesz_projector(m, lam, **kw).matrix)


def _normalized_column(pi: PadicMatrix):
    n = pi.n
    vmin = pi.min_valuation()
    j = next(j for j in range(n) if any(pi[i, j].valuation == vmin for i in range(n)))
    col = [pi[i, j] for i in range(n)]
    piv = next(i for i in range(n) if col[i].valuation == vmin)
    return [x / col[piv] for x in col], piv


def eigen_coordinate(m: PadicMatrix, lam, v, **kw) -> Padic:
    """Coefficient of the normalized ``lam``-eigenvector in ``pi_lam(v)``; linear in ``v``."""
    proj = riesz_projector(m, lam, **kw)
    _, piv = _normalized_column(proj.matrix)
    p = m.p
    v = [x if isinstance(x, Padic) else Padic(x, p, m.min_absprec()) if x != 0 else Padic.zero(p, m.min_absprec())
         for x in v]
    w = proj.matrix @ v
    return w[piv]


def up_oldspace_matrix(d: HeckeLocalData, embedding: str = "padic"):
    """Matrix of ``U_p`` on the basis ``(f, V_p f)``.

    ``U f = a_p f - psi(p) p^(k-1) V f`` and ``U(V f) = f``; columns are images.
    ``embedding="exact"`` returns a nested int/Fraction list.
    """
    t = d.constant_term("padic" if embedding == "padic" else "exact")
    if embedding == "exact":
        return [[d.a_p, 1], [-t, 0]]
    if embedding != "padic":
        raise DomainError(f"unknown embedding {embedding!r}")
    p, prec = d.p, d.prec
    a = Padic(d.a_p, p, prec) if d.a_p else Padic.zero(p, prec)
    return PadicMatrix([[a, Padic(1, p, prec)], [-t, Padic.zero(p, prec)]], p)


def kron_oldspace(datas, embedding: str = "padic"):
    """Kronecker product of oldspace matrices: the triple Atkin operator model."""
    mats = [up_oldspace_matrix(d, embedding) for d in datas]
    out = mats[0]
    for mat in mats[1:]:
        out = out.kron(mat) if embedding == "padic" else kron_exact(out, mat)
    return out
