"""Bracketing and refinement primitives with hard iteration caps.

Exceeding a cap raises :class:`ConvergenceError`; nothing here returns a
best-effort answer silently.
"""

import math

from .errors import ConvergenceError

BISECT_CAP = 200
GOLDEN_CAP = 100
NEWTON_CAP = 50

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect(fun, lo, hi, ftol, max_iter=BISECT_CAP):
    """Root of ``fun`` on ``[lo, hi]`` where ``fun(lo)`` and ``fun(hi)`` differ in sign.

    Stops once ``|fun(x)| <= ftol``.  Returns ``(x, lo, hi)`` with the final
    bracket.
    """
    flo = fun(lo)
    if abs(flo) <= ftol:
        return lo, lo, hi
    fhi = fun(hi)
    if abs(fhi) <= ftol:
        return hi, lo, hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fun(mid)
        if abs(fm) <= ftol:
            return mid, lo, hi
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceError(
        f"bisection did not reach |residual| <= {ftol:.3g} on [{lo!r}, {hi!r}]"
    )


def golden_max(fun, a, b, xtol, max_iter=GOLDEN_CAP):
    """Maximiser of a unimodal ``fun`` on ``(a, b)`` to width ``xtol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            return 0.5 * (a + b)
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fun(d)
    raise ConvergenceError(f"golden-section search did not shrink below {xtol:.3g}")


def newton(fun_and_slope, x, lo, hi, ftol, max_iter=NEWTON_CAP):
    """Newton iteration kept inside ``[lo, hi]``; falls back to the midpoint
    of the current point and the violated bound when a step leaves it."""
    for _ in range(max_iter):
        fx, dfx = fun_and_slope(x)
        if abs(fx) <= ftol:
            return x
        step = fx / dfx if dfx != 0 else math.inf
        nxt = x - step
        if not lo < nxt < hi:
            nxt = 0.5 * (x + (lo if nxt <= lo else hi))
        if nxt == x:
            return x
        x = nxt
    raise ConvergenceError(f"Newton refinement did not reach |residual| <= {ftol:.3g}")
