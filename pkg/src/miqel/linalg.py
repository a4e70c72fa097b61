"""Exact rational vectors and matrices.

Vectors are tuples of rationals and matrices are tuples of row tuples; both
are immutable, so every operation below is a pure function and all results
stay in lowest terms.  Nothing here is numerical: solving, inverting,
rank/kernel computations, the LDL^T factorization and the characteristic
polynomial are all exact, which is what lets the rest of the package state
feasibility and certificate checks as rational equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rationals import Rat, rat, ZERO, ONE

Vec = tuple
Mat = tuple


class NotPositiveDefiniteError(ValueError):
    """Raised when symmetric elimination meets a nonpositive pivot."""


def vec(entries: Iterable) -> Vec:
    return tuple(rat(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros_vec(n: int) -> Vec:
    return (ZERO,) * n


def zeros_mat(n: int, m: int) -> Mat:
    return ((ZERO,) * m,) * n


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Vec) -> Vec:
    c = rat(c)
    return tuple(c * x for x in a)


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def dot(a: Vec, b: Vec):
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def norm_sq(a: Vec):
    return dot(a, a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def matvec(m: Mat, a: Vec) -> Vec:
    return tuple(dot(row, a) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def madd(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b, strict=True))


def mscale(c, a: Mat) -> Mat:
    c = rat(c)
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def column(m: Mat, j: int) -> Vec:
    return tuple(row[j] for row in m)


def columns(m: Mat) -> list[Vec]:
    return [column(m, j) for j in range(len(m[0]))] if m else []


def from_columns(cols: Sequence[Vec]) -> Mat:
    return tuple(tuple(c[i] for c in cols) for i in range(len(cols[0])))


def is_symmetric(m: Mat) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def is_zero_mat(m: Mat) -> bool:
    return all(all(x == 0 for x in row) for row in m)


def outer_quadratic(m: Mat, x: Vec):
    """x^T M x, exact."""
    return dot(x, matvec(m, x))


def _row_reduce(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place fraction-free-ish Gauss-Jordan; returns (reduced rows, pivot cols)."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve(m: Mat, b: Vec) -> Vec | None:
    """Solve the square system m x = b exactly; None if m is singular."""
    n = len(m)
    aug = [list(row) + [bv] for row, bv in zip(m, b, strict=True)]
    aug, pivots = _row_reduce(aug, n)
    if len(pivots) < n:
        return None
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][n]
    return tuple(x)


def solve_consistent(m: Mat, b: Vec) -> tuple[Vec, list[Vec]] | None:
    """General exact solve of m x = b (m may be rectangular or singular).

    Returns (particular solution, kernel basis) or None when inconsistent.
    Free variables are set to zero in the particular solution.
    """
    nrows, ncols = len(m), len(m[0]) if m else 0
    aug = [list(row) + [bv] for row, bv in zip(m, b, strict=True)]
    aug, pivots = _row_reduce(aug, ncols)
    for r in range(len(pivots), nrows):
        if aug[r][ncols] != 0:
            return None
    x = [ZERO] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, c in enumerate(pivots):
            v[c] = -aug[r][fc]
        kernel.append(tuple(v))
    return tuple(x), kernel


def kernel_basis(m: Mat) -> list[Vec]:
    sol = solve_consistent(m, zeros_vec(len(m)))
    assert sol is not None
    return sol[1]


def rank(m: Mat) -> int:
    if not m:
        return 0
    rows = [list(r) for r in m]
    _, pivots = _row_reduce(rows, len(m[0]))
    return len(pivots)


def inverse(m: Mat) -> Mat | None:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    aug, pivots = _row_reduce(aug, n)
    if len(pivots) < n:
        return None
    out = [None] * n
    for r, c in enumerate(pivots):
        out[c] = tuple(aug[r][n:])
    return tuple(out)


def det(m: Mat):
    n = len(m)
    rows = [list(r) for r in m]
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d = d * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def min_norm_solution(m: Mat, b: Vec) -> Vec | None:
    """Minimum-Euclidean-norm exact solution of m x = b, or None if inconsistent."""
    sol = solve_consistent(m, b)
    if sol is None:
        return None
    x0, kernel = sol
    if not kernel:
        return x0
    # Project x0 onto the solution set's nearest point: solve the normal
    # equations (N^T N) s = -N^T x0 over the kernel basis N.
    nt = tuple(kernel)
    gram = tuple(tuple(dot(u, v) for v in nt) for u in nt)
    rhs = tuple(-dot(u, x0) for u in nt)
    s = solve(gram, rhs)
    assert s is not None  # independent kernel basis => Gram matrix PD
    out = list(x0)
    for coeff, kvec in zip(s, nt):
        for i, kv in enumerate(kvec):
            out[i] += coeff * kv
    return tuple(out)


def ldlt_decompose(q: Mat) -> tuple[Mat, Mat]:
    """Exact Q = M^T D M for symmetric positive definite Q.

    Symmetric Gaussian elimination without pivoting: M is unit upper
    triangular, D is diagonal with strictly positive entries.  A nonpositive
    pivot proves Q is not positive definite and raises.
    """
    n = len(q)
    if not is_symmetric(q):
        raise ValueError("ldlt_decompose needs a symmetric matrix")
    a = [list(row) for row in q]
    lower = identity(n)
    lower = [list(r) for r in lower]
    dvals = [ZERO] * n
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            raise NotPositiveDefiniteError("not positive definite")
        dvals[k] = piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            lower[i][k] = f
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    m_upper = transpose(tuple(tuple(r) for r in lower))
    d = tuple(tuple(dvals[i] if i == j else ZERO for j in range(n)) for i in range(n))
    return m_upper, d


def char_poly(m: Mat) -> tuple:
    """Coefficients (c_0, ..., c_n) of det(tI - M), low order first, c_n = 1.

    Faddeev-LeVerrier recurrence; exact for rational input.
    """
    n = len(m)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = identity(n)
    for k in range(1, n + 1):
        mk = matmul(m, mk)
        c = -sum((mk[i][i] for i in range(n)), ZERO) / k
        coeffs[n - k] = c
        if k < n:
            mk = madd(mk, mscale(c, identity(n)))
    return tuple(coeffs)


def psd_from_char(coeffs: Sequence) -> bool:
    """All roots of a real-rooted monic polynomial are >= 0 iff the
    coefficients alternate in sign: (-1)^(n-i) c_i >= 0 for all i."""
    n = len(coeffs) - 1
    return all(
        c == 0 or (c > 0) == ((n - i) % 2 == 0) for i, c in enumerate(coeffs)
    )


def is_psd(m: Mat) -> bool:
    """Exact positive semidefiniteness test for a symmetric rational matrix."""
    return psd_from_char(char_poly(m))


@dataclass(frozen=True)
class QuadraticObjective:
    """f(x) = x^T H x + h^T x + gamma with H symmetric, all data rational."""

    H: Mat
    h: Vec
    gamma: Rat = ZERO

    def __post_init__(self):
        if not is_symmetric(self.H):
            raise ValueError("H must be symmetric")
        if len(self.h) != len(self.H):
            raise ValueError("h dimension mismatch")

    @property
    def dim(self) -> int:
        return len(self.h)

    def value(self, x: Vec):
        return outer_quadratic(self.H, x) + dot(self.h, x) + self.gamma
