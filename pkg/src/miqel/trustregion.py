"""Certified minimization of a rational quadratic over a Euclidean ball.

Minimizes f(x) = x^T H x + h^T x over x^T x <= 1 (or a dilated ball) with an
additive optimality gap certified in exact rational arithmetic.  The optimum
itself is irrational in general, so tr_minimize returns an exactly feasible
rational point together with a rational lower bound on the optimum; the two
differ by at most 2^-k.

The certificate comes from Lagrangian duality: for any mu >= 0 with
H + mu*I positive semidefinite and x(mu) = -(H + mu I)^{-1} h/2,

    d(mu) = f(x(mu)) + mu * (x(mu)^T x(mu) - 1)

is a rational lower bound on the optimum.  The search over mu is a
safeguarded Newton/bisection on the secular equation ||x(mu)|| = 1, with
the smallest eigenvalue of H bracketed by Sturm sequences on the exact
characteristic polynomial.  When h is (nearly) orthogonal to the bottom
eigenspace the boundary is reached instead by pushing along a certified
approximate eigenvector; every candidate's feasibility and every gap claim
is still checked as an exact rational inequality, so the heuristics inside
the search never weaken the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import (
    Rat,
    rat,
    ZERO,
    ONE,
    ceil_log2,
    norm_floor_bits,
    sqrt_bounds,
)
from .linalg import (
    Mat,
    Vec,
    char_poly,
    dot,
    identity,
    inverse,
    is_symmetric,
    is_zero_mat,
    is_zero_vec,
    kernel_basis,
    madd,
    matvec,
    min_norm_solution,
    mscale,
    norm_sq,
    psd_from_char,
    vadd,
    vscale,
    zeros_vec,
)
from .roots import (
    RootLocation,
    isolate_extreme_root,
    refine_root,
    squarefree_part,
)

_TR_CALLS = 0


def tr_call_count() -> int:
    """Monotone count of tr_minimize invocations (bookkeeping for solver stats)."""
    return _TR_CALLS


@dataclass(frozen=True)
class TrResult:
    """An exactly feasible point plus a certified bracket on the optimum.

    upper == f(point) exactly, lower <= optimum <= upper, and
    upper - lower <= 2^-gap_exponent.  The point satisfies
    point^T point <= radius_factor^2 as an exact rational inequality.
    """

    point: Vec
    lower: Rat
    upper: Rat
    gap_exponent: int
    radius_factor: Rat = ONE


class _Search:
    """Shared candidate/dual bookkeeping for one tr_minimize call."""

    def __init__(self, H: Mat, h: Vec, target: Rat):
        self.H = H
        self.h = h
        self.target = target
        self.best_val = None
        self.best_point = None
        self.best_dual = None

    def f(self, x: Vec) -> Rat:
        return dot(x, matvec(self.H, x)) + dot(self.h, x)

    def consider(self, x: Vec) -> None:
        assert norm_sq(x) <= 1
        v = self.f(x)
        if self.best_val is None or v < self.best_val:
            self.best_val, self.best_point = v, x

    def dual(self, mu: Rat, x_mu: Vec, r_mu: Rat) -> None:
        d = self.f(x_mu) + mu * (r_mu - 1)
        if self.best_dual is None or d > self.best_dual:
            self.best_dual = d

    def done(self) -> bool:
        return (
            self.best_val is not None
            and self.best_dual is not None
            and self.best_val - self.best_dual <= self.target
        )

    def result(self, k: int) -> TrResult:
        return TrResult(self.best_point, self.best_dual, self.best_val, k)


def _shifted_inverse(H: Mat, mu: Rat):
    n = len(H)
    return inverse(madd(H, mscale(mu, identity(n))))


def _eval_mu(search: _Search, inv: Mat, mu: Rat):
    """x(mu), r(mu) = ||x(mu)||^2 and r'(mu) for a PD shift; records the dual."""
    half_h = vscale(rat(-1, 2), search.h)
    x = matvec(inv, half_h)
    r = norm_sq(x)
    y = matvec(inv, x)
    rprime = -2 * dot(x, y)
    search.dual(mu, x, r)
    return x, r, rprime


def _push_to_boundary(search: _Search, x0: Vec, z: Vec, prec: int) -> Vec:
    """The feasible point x0 + tau*z with tau a certified lower root bound.

    tau solves a*t^2 + b*t + c = 0 with a = ||z||^2, b = 2 x0.z, c = ||x0||^2 - 1,
    taken with b <= 0 (flip z) and the discriminant square root replaced by its
    sqrt_bounds lower end, which keeps the result inside the ball exactly.
    """
    if dot(x0, z) > 0:
        z = vscale(rat(-1), z)
    a = norm_sq(z)
    b = 2 * dot(x0, z)
    c = norm_sq(x0) - 1
    disc = b * b - 4 * a * c
    assert disc >= 0
    if disc == 0:
        return x0
    l, _u = sqrt_bounds(disc, prec)
    tau = (-b + l) / (2 * a)
    x = vadd(x0, vscale(tau, z))
    assert norm_sq(x) <= 1
    return x


def _secular_iterate(search: _Search, mu_lo: Rat, mu_hi: Rat, x_hi, r_hi, k: int):
    """Safeguarded Newton/bisection for the boundary multiplier.

    Invariant: r(mu) > 1 for mu just above mu_lo, r(mu_hi) <= 1 with x_hi
    evaluated.  Terminates when the exact dual gap drops below the target.
    """
    H, n = search.H, len(search.h)
    search.consider(x_hi)
    if search.done():
        return
    last = None  # (mu, r, rprime) of the latest evaluation
    max_iters = 8 * k + 512
    for _ in range(max_iters):
        trial = None
        if last is not None and last[2] != 0 and last[1] > 0:
            mu_e, r_e, rp_e = last
            _sl, s_hi = sqrt_bounds(r_e, 64)
            step = 2 * r_e * (1 - s_hi) / rp_e
            cand = mu_e + step
            if mu_lo < cand < mu_hi:
                trial = cand
        if trial is None:
            trial = (mu_lo + mu_hi) / 2
        inv = _shifted_inverse(H, trial)
        if inv is None:
            # exactly singular trial shift: can only happen at -lambda_min
            mu_lo = trial
            last = None
            continue
        x, r, rp = _eval_mu(search, inv, trial)
        last = (trial, r, rp)
        if r <= 1:
            mu_hi = trial
            search.consider(x)
        else:
            mu_lo = trial
        if search.done():
            return
    raise RuntimeError("trust-region multiplier search failed to certify the gap")


def _half_norm_upper(h: Vec) -> Rat:
    """A rational u >= ||h||/2 (loose is fine, used only for the bracket end)."""
    _l, u = sqrt_bounds(norm_sq(h) / 4, 16)
    return u


def _solve_exact_lambda(search: _Search, lam: Rat, k: int) -> TrResult:
    """Boundary search when the smallest eigenvalue is an exact rational < 0."""
    H, h = search.H, search.h
    n = len(h)
    mu0 = -lam
    m0 = madd(H, mscale(mu0, identity(n)))
    half_h = vscale(rat(-1, 2), h)
    x0 = min_norm_solution(m0, half_h)
    if x0 is None:
        # h has weight on the bottom eigenspace: boundary multiplier is above mu0
        mu_hi = mu0 + _half_norm_upper(h)
        inv = _shifted_inverse(H, mu_hi)
        x, r, _ = _eval_mu(search, inv, mu_hi)
        assert r <= 1
        _secular_iterate(search, mu0, mu_hi, x, r, k)
        return search.result(k)
    r0 = norm_sq(x0)
    search.dual(mu0, x0, r0)  # valid: H + mu0*I is PSD
    if r0 > 1:
        mu_hi = mu0 + _half_norm_upper(h)
        inv = _shifted_inverse(H, mu_hi)
        x, r, _ = _eval_mu(search, inv, mu_hi)
        assert r <= 1
        _secular_iterate(search, mu0, mu_hi, x, r, k)
        return search.result(k)
    # hard case: the kernel of H - lam*I is rational; push x0 to the boundary
    kern = kernel_basis(m0)
    assert kern, "singular shift must have a kernel"
    z = kern[0]
    search.consider(x0)
    prec = 64
    while not search.done():
        search.consider(_push_to_boundary(search, x0, z, prec))
        prec *= 2
        if prec > 2 ** 24:
            raise RuntimeError("hard-case push failed to certify the gap")
    return search.result(k)


def _solve_bracketed_lambda(search: _Search, loc: RootLocation, k: int) -> TrResult:
    """Boundary search with the smallest eigenvalue known only to an interval."""
    H, h = search.H, search.h
    n = len(h)
    width_exp = 32
    for _round in range(64):
        loc = refine_root(loc, rat(1, 2**width_exp))
        if loc.is_exact:
            return _solve_exact_lambda(search, loc.exact, k)
        a = loc.lo  # a < lambda_min strictly, so H - a*I is PD
        mu0 = max(ZERO, -a)
        inv0 = _shifted_inverse(H, mu0)
        assert inv0 is not None
        x0, r0, _ = _eval_mu(search, inv0, mu0)
        if r0 > 1:
            mu_hi = mu0 + _half_norm_upper(h)
            inv = _shifted_inverse(H, mu_hi)
            x, r, _ = _eval_mu(search, inv, mu_hi)
            assert r <= 1
            _secular_iterate(search, mu0, mu_hi, x, r, k)
            return search.result(k)
        # nearly-hard case: the multiplier is pinched in [-lambda_min, mu0].
        # Push along the dominant inverse-iteration direction and tighten.
        search.consider(x0)
        cols = [tuple(row[j] for row in inv0) for j in range(n)]
        z = max(cols, key=norm_sq)
        _zl, zu = sqrt_bounds(norm_sq(z), width_exp)
        z = vscale(1 / zu, z)
        search.consider(_push_to_boundary(search, x0, z, width_exp))
        if search.done():
            return search.result(k)
        width_exp *= 2
    raise RuntimeError("eigenvalue pinch failed to certify the gap")


def tr_minimize(H: Mat, h: Vec, k: int) -> TrResult:
    """Minimize x^T H x + h^T x over the unit ball with certified gap 2^-k.

    Returns an exactly feasible rational point whose objective value exceeds
    the optimum by at most 2^-k, certified by the returned dual lower bound.
    """
    global _TR_CALLS
    _TR_CALLS += 1
    if not is_symmetric(H):
        raise ValueError("H must be symmetric")
    if len(h) != len(H):
        raise ValueError("h dimension mismatch")
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    n = len(h)
    h = tuple(rat(q) for q in h)
    H = tuple(tuple(rat(q) for q in row) for row in H)
    target = rat(1, 2**k)
    search = _Search(H, h, target)

    if is_zero_mat(H) and is_zero_vec(h):
        z = zeros_vec(n)
        return TrResult(z, ZERO, ZERO, k)

    cp = char_poly(H)
    half_h = vscale(rat(-1, 2), h)
    if psd_from_char(cp):
        x = min_norm_solution(H, half_h)
        if x is not None and norm_sq(x) <= 1:
            v = search.f(x)
            return TrResult(x, v, v, k)
        # convex but the unconstrained minimizer is outside (or none exists):
        # boundary solution with multiplier in (0, ||h||/2 + lambda slack]
        inv0 = _shifted_inverse(H, ZERO)
        if inv0 is not None:
            _eval_mu(search, inv0, ZERO)
        mu_hi = _half_norm_upper(h)
        inv = _shifted_inverse(H, mu_hi)
        x, r, _ = _eval_mu(search, inv, mu_hi)
        assert r <= 1
        _secular_iterate(search, ZERO, mu_hi, x, r, k)
        return search.result(k)

    # indefinite: lambda_min < 0 strictly
    sf = squarefree_part(cp)
    hints = [H[i][i] for i in range(n)] + [ZERO]
    loc = isolate_extreme_root(sf, "min", hints)
    if loc.is_exact:
        return _solve_exact_lambda(search, loc.exact, k)
    return _solve_bracketed_lambda(search, loc, k)


def tr_minimize_rel(H: Mat, h: Vec, eps) -> TrResult:
    """Gap at most eps * max(||H||, ||h||), via tr_minimize.

    The exponent is k = ceil(log2(1/eps) + size(H) + size(h)) where size() is
    the denominator-bit-length bound certifying ||.|| >= 2^-size; this keeps
    2^-k below eps * max(||H||, ||h||).
    """
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = len(h)
    if is_zero_mat(H) and is_zero_vec(h):
        return TrResult(zeros_vec(n), ZERO, ZERO, 1)
    bits_h = norm_floor_bits(rat(q) for q in h)
    bits_H = norm_floor_bits(rat(q) for row in H for q in row)
    k = max(1, ceil_log2(1 / eps) + bits_H + bits_h)
    return tr_minimize(H, h, k)


def tr_minimize_scaled(H: Mat, h: Vec, delta, eps) -> TrResult:
    """Minimize over the dilated ball x^T x <= (1+delta)^2.

    Substitutes y = x/(1+delta), solves the unit-ball problem on the rescaled
    data and maps back; the gap is at most eps*(1+delta)^2*max(||H||, ||h||).
    """
    delta = rat(delta)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    factor = 1 + delta
    res = tr_minimize_rel(
        mscale(factor * factor, H), vscale(factor, h), eps
    )
    point = vscale(factor, res.point)
    return TrResult(point, res.lower, res.upper, res.gap_exponent, radius_factor=factor)


def spectral_witness(H: Mat, eps, orient_against: Vec | None = None) -> Vec:
    """A vector v in the unit ball with |v^T H v| within a (1-eps) factor of ||H||.

    Minimizes x^T H x and x^T (-H) x over the ball and keeps the candidate
    with the larger |quadratic value|.  When ``orient_against`` is given, v is
    flipped so that orient_against^T v has the same sign as v^T H v (the
    orientation the distant-points construction needs).
    """
    if not is_symmetric(H):
        raise ValueError("H must be symmetric")
    n = len(H)
    if is_zero_mat(H):
        return zeros_vec(n)
    z = zeros_vec(n)
    s = tr_minimize_rel(H, z, eps).point
    t = tr_minimize_rel(mscale(rat(-1), H), z, eps).point
    qs = dot(s, matvec(H, s))
    qt = dot(t, matvec(H, t))
    v, qv = (t, qt) if abs(qt) >= abs(qs) else (s, qs)
    if orient_against is not None:
        hv = dot(orient_against, v)
        if (qv >= 0 and hv < 0) or (qv < 0 and hv > 0):
            v = vscale(rat(-1), v)
    return v
