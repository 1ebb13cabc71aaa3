"""Bracketed root finding and adaptive quadrature.

Small, deterministic kernels: fixed expansion/iteration rules, no
randomness, so identical inputs always produce bit-identical results.
"""

from __future__ import annotations

__all__ = ["BracketError", "grow_bracket", "solve_bracketed", "adaptive_simpson"]


class BracketError(RuntimeError):
    """No sign change could be bracketed for a root solve."""


def grow_bracket(f, x0: float, step: float, x_limit: float | None = None,
                 max_expansions: int = 200) -> tuple[float, float]:
    """Expand geometrically from ``x0`` until ``f`` changes sign.

    ``step`` sets the first move and its sign the direction; the step
    doubles on every miss.  ``x_limit`` optionally caps the search.
    Returns an ordered interval (a, b) with f(a)*f(b) <= 0.
    """
    if step == 0.0:
        raise ValueError("step must be nonzero")
    fa = f(x0)
    if fa == 0.0:
        return (x0, x0)
    a = x0
    x = x0 + step
    for _ in range(max_expansions):
        clipped = False
        if x_limit is not None:
            if (step > 0 and x >= x_limit) or (step < 0 and x <= x_limit):
                x = x_limit
                clipped = True
        fx = f(x)
        if fx == 0.0 or (fa > 0.0) != (fx > 0.0):
            return (a, x) if a <= x else (x, a)
        if clipped:
            break
        a, fa = x, fx
        step *= 2.0
        x = x + step
    raise BracketError(
        f"no sign change of f starting from {x0!r} with initial step {step!r}"
    )


def solve_bracketed(f, a: float, b: float, rtol: float = 1e-12,
                    max_iter: int = 200) -> float:
    """Root of ``f`` on a sign-changing interval [a, b].

    Bisection refined by secant steps: a secant candidate is used whenever
    it lands strictly inside the middle half of the bracket, otherwise the
    midpoint.  Converges to relative width ``rtol``.
    """
    if not a <= b:
        a, b = b, a
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise BracketError(f"f({a}) and f({b}) have the same sign")
    for _ in range(max_iter):
        width = b - a
        if width <= rtol * max(abs(a), abs(b)):
            break
        x = 0.5 * (a + b)
        if fb != fa:
            secant = b - fb * (b - a) / (fb - fa)
            lo = a + 0.25 * width
            hi = b - 0.25 * width
            if lo < secant < hi:
                x = secant
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    return 0.5 * (a + b)


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def _adaptive(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + _adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1))


def adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int = 48) -> float:
    """Adaptive Simpson quadrature of ``f`` over [a, b].

    ``tol`` is an absolute tolerance; callers scale it to the magnitude of
    the expected result.  Signed: a > b integrates backwards.
    """
    if a == b:
        return 0.0
    fa = f(a)
    fb = f(b)
    fm = f(0.5 * (a + b))
    whole = _simpson(fa, fm, fb, b - a)
    return _adaptive(f, a, b, fa, fm, fb, whole, abs(tol), max_depth)
