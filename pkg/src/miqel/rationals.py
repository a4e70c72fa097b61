"""Exact rational scalars: construction, serialization, bit sizes, certified square roots.

Every quantity in this package is an arbitrary-precision rational kept in
lowest terms with a positive denominator.  The backend is gmpy2's mpq when
available (much faster on large numerators) and the stdlib Fraction
otherwise; both canonicalize after every operation, so equality tests are
exact throughout.

Square roots of rationals are irrational in general.  This module provides
the two certified workarounds everything else is built on: an additive
bracket l <= sqrt(a) <= u with exact width max(1, a)/2^k, and a
multiplicative lower bound l <= sqrt(a) <= (1+eps)*l.  It also provides
exact floor/ceil of expressions u + sqrt(v), which lets callers enumerate
the integers in an interval with irrational endpoints without any floating
point.
"""

from __future__ import annotations

import math
import re

try:
    from gmpy2 import mpq as _mpq

    _BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq

    _BACKEND = "fractions"

# The canonical rational type. mpq and Fraction compare equal across types,
# hash identically and print as "num/den", so they are interchangeable here.
Rat = type(_mpq(1, 2))

ZERO = _mpq(0)
ONE = _mpq(1)

_RAT_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def rat(a, b=None) -> Rat:
    """Build a rational from ints, strings like "-3/4", or another rational."""
    if b is not None:
        return _mpq(a, b)
    if isinstance(a, float):
        raise TypeError("refusing to build a rational from a float; use rat(num, den)")
    return _mpq(a)


def num(q) -> int:
    return int(q.numerator)


def den(q) -> int:
    return int(q.denominator)


def parse_rat(s: str) -> Rat:
    """Parse the wire format "num/den" or "num" (base 10, optional leading -)."""
    s = s.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    return _mpq(s)


def rat_str(q) -> str:
    """Serialize as "num/den", or "num" when the denominator is 1."""
    n, d = num(q), den(q)
    return str(n) if d == 1 else f"{n}/{d}"


def floor_rat(q) -> int:
    return num(q) // den(q)


def ceil_rat(q) -> int:
    return -((-num(q)) // den(q))


def bit_size(q) -> int:
    """max(bits of |numerator|, bits of denominator); 1 for zero.

    For positive q this gives the two-sided bound 2^-bit_size(q) <= q <= 2^bit_size(q).
    """
    n, d = abs(num(q)), den(q)
    return max(n.bit_length(), d.bit_length(), 1)


def norm_floor_bits(entries) -> int:
    """Smallest s with ||v|| >= 2^-s for a nonzero rational vector/matrix v.

    Any nonzero entry q has |q| >= 1/den(q) >= 2^-bits(den(q)), and the
    Euclidean (or spectral) norm dominates every entry, so the minimum
    denominator bit length over nonzero entries certifies the bound.
    Returns 0 when all entries are zero (the caller must special-case that).
    """
    best = None
    for q in entries:
        if q != 0:
            b = den(q).bit_length()
            if best is None or b < best:
                best = b
    return 0 if best is None else best


def ceil_log2(q) -> int:
    """Exact ceil(log2(q)) for a positive rational q."""
    if q <= 0:
        raise ValueError("ceil_log2 needs a positive rational")
    n, d = num(q), den(q)
    # q > 2^(bits(n) - bits(d) - 1) always, so walk up from there.
    e = n.bit_length() - d.bit_length() - 1
    while not ((d << e) >= n if e >= 0 else d >= (n << -e)):
        e += 1
    return e


def floor_sqrt_rat(q) -> int:
    """Exact floor(sqrt(q)) for a nonnegative rational q."""
    if q < 0:
        raise ValueError("negative radicand")
    n, d = num(q), den(q)
    return math.isqrt(n * d) // d


def floor_add_sqrt(u, v) -> int:
    """Exact floor(u + sqrt(v)) for rationals u and v >= 0."""
    if v < 0:
        raise ValueError("negative radicand")
    n = floor_rat(u) + floor_sqrt_rat(v)
    # n is within 1 of the truth; fix with exact comparisons of N <= u + sqrt(v).
    while _le_add_sqrt(n + 1, u, v):
        n += 1
    while not _le_add_sqrt(n, u, v):
        n -= 1
    return n


def ceil_sub_sqrt(u, v) -> int:
    """Exact ceil(u - sqrt(v)) for rationals u and v >= 0."""
    return -floor_add_sqrt(-u, v)


def _le_add_sqrt(n: int, u, v) -> bool:
    # n <= u + sqrt(v)  <=>  n - u <= sqrt(v)
    t = n - u
    return t <= 0 or t * t <= v


def sqrt_bounds(alpha, k: int) -> tuple[Rat, Rat]:
    """Certified bracket of sqrt(alpha) by k bisection steps.

    Returns (l, u) with 0 <= l, l^2 <= alpha <= u^2 and exactly
    u - l = max(1, alpha) / 2^k.  The midpoint comparison m^2 vs alpha is the
    whole algorithm; no floating point is involved, so the width identity is
    an exact rational equality.
    """
    alpha = _mpq(alpha)
    if alpha <= 0:
        raise ValueError("sqrt_bounds needs alpha > 0")
    if k < 1:
        raise ValueError("sqrt_bounds needs k >= 1")
    lo = ZERO
    hi = max(ONE, alpha)
    for _ in range(k):
        mid = (lo + hi) / 2
        if mid * mid <= alpha:
            lo = mid
        else:
            hi = mid
    assert lo * lo <= alpha <= hi * hi
    assert hi - lo == max(ONE, alpha) / 2**k
    return lo, hi


def sqrt_lower_multiplicative(alpha, eps) -> Rat:
    """Positive rational l with l <= sqrt(alpha) <= (1+eps) * l.

    Runs sqrt_bounds with k = ceil(log2(1/eps) + 3*size(alpha)/2 + 1), which
    pins the bracket width below eps * l; both postconditions are then checked
    as exact rational inequalities (and k is bumped in the unlikely event the
    size bound was not tight enough for a non-canonical input).
    """
    alpha = _mpq(alpha)
    eps = _mpq(eps)
    if alpha <= 0 or eps <= 0:
        raise ValueError("sqrt_lower_multiplicative needs alpha > 0 and eps > 0")
    s = bit_size(alpha)
    k = max(1, ceil_log2(1 / eps) + (3 * s + 1) // 2 + 1)
    scale = (1 + eps) * (1 + eps)
    for _ in range(64):
        l, _u = sqrt_bounds(alpha, k)
        if l > 0 and l * l <= alpha <= scale * (l * l):
            return l
        k *= 2
    raise AssertionError("sqrt_lower_multiplicative failed to converge")
