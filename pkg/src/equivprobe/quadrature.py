"""Adaptive Simpson quadrature for the few integrals without a closed form."""
import math

from ._validation import check_interval

DEFAULT_TOL = 1e-12
MAX_DEPTH = 40


def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, a, m)
    right = _simpson(fm, frm, fb, m, b)
    err = left + right - whole
    if depth <= 0 or abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    return (_adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + _adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1))


def adaptive_simpson(f, a, b, tol=DEFAULT_TOL, max_depth=MAX_DEPTH):
    """Integrate the scalar function `f` over [a, b] to absolute tolerance `tol`.

    The first level is always subdivided once so that an integrand which
    happens to vanish at a, b and the midpoint is not mistaken for zero.
    """
    a, b = check_interval(a, b)
    if a == b:
        return 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    flm, frm = f(0.5 * (a + m)), f(0.5 * (m + b))
    left = _simpson(fa, flm, fm, a, m)
    right = _simpson(fm, frm, fb, m, b)
    return (_adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, max_depth - 1)
            + _adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, max_depth - 1))


def integrate_piecewise(f, a, b, breakpoints=(), tol=DEFAULT_TOL, max_depth=MAX_DEPTH):
    """Adaptive Simpson over [a, b], split at every breakpoint strictly inside it.

    The tolerance is shared out between pieces in proportion to their length.
    """
    a, b = check_interval(a, b)
    if a == b:
        return 0.0
    cuts = sorted({p for p in breakpoints if math.isfinite(p) and a < p < b})
    edges = [a, *cuts, b]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += adaptive_simpson(f, lo, hi, tol * (hi - lo) / (b - a), max_depth)
    return total
