"""Exact real-root location for rational polynomials via Sturm sequences.

Polynomials are tuples of rational coefficients, low order first, with no
trailing zeros.  Only what the trust-region kernel needs is provided: locate
the smallest or largest real root of a real-rooted polynomial (the
characteristic polynomial of a symmetric matrix), either exactly when the
root is rational and cheap to spot, or as an isolating interval with
non-root rational endpoints that can be refined to any width.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import Rat, rat, ZERO, ONE, floor_rat, ceil_rat


def poly_trim(cs) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(p) -> int:
    return len(p) - 1


def poly_eval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p) -> tuple:
    return poly_trim(i * c for i, c in enumerate(p) if i > 0)


def poly_divmod(a, b) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [ZERO] * max(0, len(a) - len(b) + 1)
    dlead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] / dlead
        if c != 0:
            quo[shift] = c
            for i, bc in enumerate(b):
                rem[shift + i] -= c * bc
    return poly_trim(quo), poly_trim(rem)


def poly_gcd(a, b) -> tuple:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)
    return a


def squarefree_part(p) -> tuple:
    g = poly_gcd(p, poly_derivative(p))
    if poly_degree(g) <= 0:
        return poly_trim(p)
    q, r = poly_divmod(p, g)
    assert not r
    return q


def sturm_chain(p) -> list[tuple]:
    """Sturm chain of a squarefree polynomial."""
    chain = [poly_trim(p), poly_derivative(p)]
    while chain[-1] and poly_degree(chain[-1]) >= 0:
        rem = poly_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(tuple(-c for c in rem))
    return chain


def sign_variations(chain, x) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_between(chain, a, b) -> int:
    """Distinct real roots in the open interval (a, b); endpoints must be non-roots."""
    assert poly_eval(chain[0], a) != 0 and poly_eval(chain[0], b) != 0
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_root_bound(p) -> Rat:
    """R such that every real root lies in (-R, R)."""
    lead = p[-1]
    m = max((abs(c / lead) for c in p[:-1]), default=ZERO)
    return m + 1


@dataclass(frozen=True)
class RootLocation:
    """An extreme real root: exact rational value, or isolating interval.

    Interval form: lo < root < hi, ``poly`` has no root at either endpoint
    and exactly one root inside, and it is the extreme one.  ``poly`` may be
    a deflated divisor of the polynomial originally isolated (rational roots
    are peeled off during isolation), which is why refinement must bisect on
    it rather than on the original.
    """

    exact: Rat | None
    lo: Rat
    hi: Rat
    poly: tuple = ()

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def width(self):
        return ZERO if self.is_exact else self.hi - self.lo


def _deflate(p, r) -> tuple:
    """Exact division of p by (x - r); r must be a root."""
    q, rem = poly_divmod(p, (-r, ONE))
    assert not rem
    return q


def _candidates_in(p, lo, hi) -> Rat | None:
    """Cheap exact-root probe: integers (and quarters, on narrow intervals)."""
    if hi - lo <= 64:
        for z in range(ceil_rat(lo), floor_rat(hi) + 1):
            if poly_eval(p, rat(z)) == 0 and lo < z < hi:
                return rat(z)
    if hi - lo <= 4:
        z0, z1 = ceil_rat(4 * lo), floor_rat(4 * hi)
        for zq in range(z0, z1 + 1):
            q = rat(zq, 4)
            if lo < q < hi and poly_eval(p, q) == 0:
                return q
    return None


def isolate_extreme_root(p, which: str, hints=()) -> RootLocation:
    """Isolate the smallest or largest real root of a squarefree polynomial.

    ``p`` must have at least one real root (always true for characteristic
    polynomials of symmetric matrices).  ``hints`` are rational values worth
    probing for exactness (e.g. the diagonal entries of the matrix).
    """
    p = poly_trim(p)
    assert poly_degree(p) >= 1

    # Peel off rational roots discovered via hints.  If a hint is the extreme
    # root we are done; otherwise deflating it leaves the extreme root intact.
    changed = True
    while changed:
        changed = False
        if poly_degree(p) == 1:
            r = -p[0] / p[1]
            return RootLocation(r, r, r)
        bound = cauchy_root_bound(p)
        lo, hi = -bound, bound
        for h in hints:
            h = rat(h)
            if lo < h < hi and poly_eval(p, h) == 0:
                q = _deflate(p, h)
                cq = sturm_chain(q)
                if which == "min" and count_roots_between(cq, lo, h) == 0:
                    return RootLocation(h, h, h)
                if which == "max" and count_roots_between(cq, h, hi) == 0:
                    return RootLocation(h, h, h)
                p = q
                changed = True
                break

    chain = sturm_chain(p)
    bound = cauchy_root_bound(p)
    lo, hi = -bound, bound
    assert poly_eval(p, lo) != 0 and poly_eval(p, hi) != 0
    assert count_roots_between(chain, lo, hi) >= 1, "no real root inside the Cauchy bound"

    # Bisect toward the extreme root, deflating any exact midpoint hits.
    while count_roots_between(chain, lo, hi) > 1:
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0:
            q = _deflate(p, mid)
            cq = sturm_chain(q)
            if which == "min":
                if count_roots_between(cq, lo, mid) == 0:
                    return RootLocation(mid, mid, mid)
                p, chain, hi = q, cq, mid
            else:
                if count_roots_between(cq, mid, hi) == 0:
                    return RootLocation(mid, mid, mid)
                p, chain, lo = q, cq, mid
            continue
        if which == "min":
            if count_roots_between(chain, lo, mid) >= 1:
                hi = mid
            else:
                lo = mid
        else:
            if count_roots_between(chain, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
    if poly_degree(p) == 1:
        r = -p[0] / p[1]
        return RootLocation(r, r, r)
    probe = _candidates_in(p, lo, hi)
    if probe is not None:
        return RootLocation(probe, probe, probe)
    return RootLocation(None, lo, hi, p)


def refine_root(loc: RootLocation, width) -> RootLocation:
    """Shrink an isolating interval below ``width`` (exact roots pass through)."""
    if loc.is_exact:
        return loc
    p = loc.poly
    lo, hi = loc.lo, loc.hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = poly_eval(p, mid)
        if v == 0:
            return RootLocation(mid, mid, mid)
        # exactly one root in (lo, hi): a sign change tells which half.
        if (poly_eval(p, lo) > 0) != (v > 0):
            hi = mid
        else:
            lo = mid
    probe = _candidates_in(p, lo, hi)
    if probe is not None:
        return RootLocation(probe, probe, probe)
    return RootLocation(None, lo, hi, p)
