"""Adaptive quadrature for integrands carrying a 1/sqrt(1 - t^2) endpoint singularity.

Everything in this package that integrates against the arcsine weight goes
through :func:`integrate_arcsine`.  The default policy substitutes
``t = sin(theta)`` so that

    int_a^b g(t) / sqrt(1 - t^2) dt = int_{asin a}^{asin b} g(sin theta) dtheta

and the singular endpoint disappears.  The ``"alg"`` policy keeps the
original variable and hands the singular factor to QUADPACK's algebraic
weight instead; it exists as an independent cross-check of the substitution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from scipy import integrate as spi

from .errors import DomainError

ENDPOINT_POLICIES = ("sin", "alg")


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for the adaptive integrator.

    ``abs_tol`` and ``rel_tol`` are passed through as QUADPACK's ``epsabs`` and
    ``epsrel``; ``max_subdivisions`` caps the number of panels.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000
    endpoint: str = "sin"

    def __post_init__(self):
        if self.endpoint not in ENDPOINT_POLICIES:
            raise DomainError(f"unknown endpoint policy {self.endpoint!r}")
        if self.abs_tol <= 0 or self.rel_tol < 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadratureConfig()


def integrate(func: Callable[[float], float], a: float, b: float,
              quad: Optional[QuadratureConfig] = None,
              points: Optional[Iterable[float]] = None) -> float:
    """Plain adaptive integral of ``func`` over ``[a, b]``."""
    quad = quad or DEFAULT_QUAD
    if b == a:
        return 0.0
    pts = _interior_points(points, a, b)
    val, _ = spi.quad(func, a, b, epsabs=quad.abs_tol, epsrel=quad.rel_tol,
                      limit=quad.max_subdivisions, points=pts)
    return float(val)


def integrate_arcsine(g: Callable[[float], float], lo: float = 0.0, hi: float = 1.0,
                      quad: Optional[QuadratureConfig] = None,
                      points: Optional[Iterable[float]] = None) -> float:
    """Integrate ``g(t) / sqrt(1 - t^2)`` over ``[lo, hi]`` with ``0 <= lo <= hi <= 1``.

    ``points`` are break points in the ``t`` variable (kinks of ``g``).
    """
    quad = quad or DEFAULT_QUAD
    if not 0.0 <= lo <= hi <= 1.0:
        raise DomainError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
    if hi == lo:
        return 0.0
    if quad.endpoint == "sin":
        theta_pts = None if points is None else [math.asin(min(max(p, 0.0), 1.0)) for p in points]
        return integrate(lambda th: g(math.sin(th)), math.asin(lo), math.asin(hi),
                         quad, theta_pts)

    # "alg": 1/sqrt(1-t^2) = (1-t)^(-1/2) * (1+t)^(-1/2); QUADPACK weights the first factor.
    def smooth(t):
        return g(t) / math.sqrt(1.0 + t)

    if hi < 1.0:
        return integrate(lambda t: smooth(t) / math.sqrt(1.0 - t), lo, hi, quad, points)
    pieces = sorted(p for p in (points or []) if lo < p < hi)
    edges = [lo, *pieces, hi]
    total = 0.0
    for a, b in zip(edges[:-2], edges[1:-1]):
        total += integrate(lambda t: smooth(t) / math.sqrt(1.0 - t), a, b, quad)
    a = edges[-2]
    val, _ = spi.quad(smooth, a, 1.0, weight="alg", wvar=(0.0, -0.5),
                      epsabs=quad.abs_tol, epsrel=quad.rel_tol,
                      limit=quad.max_subdivisions)
    return total + float(val)


def _interior_points(points, a, b):
    if points is None:
        return None
    lo, hi = min(a, b), max(a, b)
    pts = sorted({float(p) for p in points if lo < p < hi})
    return pts or None
