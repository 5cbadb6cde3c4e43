"""One-dimensional search helpers: golden-section maximization and predicate bisection."""

from __future__ import annotations

import math
from typing import Callable, Tuple

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(func: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-8, max_iter: int = 200) -> Tuple[float, float]:
    """Maximize a unimodal ``func`` on [a, b]; returns (x, func(x)).

    The endpoints are evaluated too, so a monotone function returns its
    larger endpoint rather than an interior approximation of it.
    """
    if b < a:
        a, b = b, a
    fa, fb = func(a), func(b)
    best = (a, fa) if fa >= fb else (b, fb)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    return (x, fx) if fx >= best[1] else best


def bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float, tol: float,
                     max_iter: int = 200) -> Tuple[float, float]:
    """Shrink [lo, hi] with pred(lo) false and pred(hi) true until hi - lo <= tol."""
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def bisect_sign(func: Callable[[float], float], lo: float, hi: float, tol: float,
                max_iter: int = 200) -> float:
    """Root of a function with func(lo) < 0 < func(hi), by bisection to width tol."""
    flo, fhi = func(lo), func(hi)
    if not (flo < 0.0 < fhi):
        raise ValueError(f"no sign change on [{lo}, {hi}]: {flo}, {fhi}")
    a, b = bisect_predicate(lambda x: func(x) > 0.0, lo, hi, tol, max_iter)
    return 0.5 * (a + b)
