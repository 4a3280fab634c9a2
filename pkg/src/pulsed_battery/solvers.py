"""Derivative-free one-dimensional root finding and maximisation."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


class BracketError(RuntimeError):
    """The supplied interval does not contain a sign change."""


def find_root(f: Callable[[float], float], a: float, b: float, xtol: float = 1e-12,
              maxiter: int = 200) -> float:
    """Root of ``f`` in ``[a, b]`` by bisection with secant acceleration.

    Each iteration takes a secant (false-position) step inside the bracket and
    adds a bisection whenever that step failed to halve the bracket, so the
    bracket shrinks at least geometrically.  Stops once the bracket is
    narrower than ``xtol``.
    """
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    for _ in range(maxiter):
        width = abs(b - a)
        if width < xtol:
            break
        x = b - fb * (b - a) / (fb - fa)
        if not (min(a, b) < x < max(a, b)):
            x = 0.5 * (a + b)
        for _pass in range(2):
            fx = f(x)
            if fx == 0:
                return x
            if (fx > 0) == (fa > 0):
                a, fa = x, fx
            else:
                b, fb = x, fx
            # secant stalled on one side: follow with a bisection
            if abs(b - a) <= 0.5 * width:
                break
            x = 0.5 * (a + b)
    return b if abs(fb) < abs(fa) else a


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       xtol: float = 1e-13, maxiter: int = 300) -> tuple[float, float]:
    """Maximum of a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if b - a <= xtol * max(1.0, abs(a) + abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = c if fc > fd else d
    return x, max(fc, fd)


def parabolic_polish(f: Callable[[float], float], x: float, h: float, lo: float, hi: float,
                     steps: int = 2) -> float:
    """Move ``x`` to the vertex of the parabola through ``x - h, x, x + h``.

    Near a smooth maximum ``f`` is flat to within rounding over a window of
    relative width ~1e-8, which caps the accuracy of any comparison-based
    search.  The vertex estimate divides the rounding noise by ``h`` instead,
    so a few steps with a moderate ``h`` recover the argmax to ~1e-11.
    """
    for _ in range(steps):
        if not (lo <= x - h and x + h <= hi):
            break
        fm, f0, fp = f(x - h), f(x), f(x + h)
        curvature = fp - 2 * f0 + fm
        if not curvature < 0:
            break
        step = 0.5 * h * (fm - fp) / curvature
        if abs(step) > h:
            break
        x += step
    return x


def maximize_on_interval(f: Callable, lo: float, hi: float, n_scan: int = 400,
                         xtol: float = 1e-13) -> tuple[float, float]:
    """Global maximum of ``f`` on ``(lo, hi]``: coarse grid scan, then golden section.

    ``f`` must accept a NumPy array for the scan.  The golden-section stage runs
    on the two grid cells around the best grid point, so the hump containing
    the global maximum only needs to span a couple of grid cells.  The result
    is finished with :func:`parabolic_polish`.
    """
    grid = np.linspace(lo, hi, n_scan + 1)
    values = np.asarray(f(grid), dtype=float)
    values = np.where(np.isfinite(values), values, -np.inf)
    i = int(np.argmax(values))
    left = grid[max(i - 1, 0)]
    right = grid[min(i + 1, n_scan)]
    fs = lambda x: float(f(x))  # noqa: E731
    x, _ = golden_section_max(fs, left, right, xtol=xtol)
    x = parabolic_polish(fs, x, 1e-4 * (right - left), left, right)
    return x, fs(x)


def doubling_horizon(f: Callable[[float], float], t0: float, max_doublings: int = 80) -> float:
    """First ``t0 * 2**k`` at which ``f`` has started to decrease.

    For a function that rises to a single maximum and then falls, the maximum
    lies below the returned value.
    """
    t, ft = t0, f(t0)
    for _ in range(max_doublings):
        t_next = 2 * t
        f_next = f(t_next)
        if f_next < ft:
            return t_next
        t, ft = t_next, f_next
    raise RuntimeError("function kept increasing; no maximum found")
