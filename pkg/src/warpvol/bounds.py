"""Envelope lower bound on f'^2 and the half-volume bound H(m).

On the rising half [0, r] of an admissible profile with equator radius
m = max f, the two monotone quantities give

    f'^2 >= 1 - f^2 - m^(n-2)(1 - m^2) / f^(n-2)      (scalar branch)
    f'^2 >= eps (m^2 - f^2)                            (Ricci branch)

With f = m s the scalar branch factors as m^2 (1 - s^2) * bracket(s), where

    bracket(s) = 1 - (1 - m^2)(1 - s^(n-2)) / (m^2 s^(n-2) (1 - s^2)),

so the envelope is m^2 (1 - s^2) max(bracket(s), eps).  h(m) is the largest
s with bracket(s) = eps and H(m) integrates the Ricci branch below h and the
scalar branch above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import ConsistencyError, DomainError, ThresholdViolationError
from .quadrature import QuadratureConfig, integrate_arcsine
from .special import q_integral, wallis_W

ROOT_START = 1.0 - 1e-8
ROOT_RATIO = 0.99
ROOT_CHUNK = 512
BRACKET_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class BoundParams:
    n: int
    eps: float
    m: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"n must be an integer >= 3, got {self.n!r}")
        if not 0.0 < self.eps <= 1.0:
            raise DomainError(f"eps must lie in (0, 1], got {self.eps!r}")
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m!r}")

    @property
    def deficit(self) -> float:
        """(1 - m^2) / m^2, the coefficient in front of the bracket's correction."""
        return (1.0 - self.m * self.m) / (self.m * self.m)


def _geometric_quotient(s, n):
    # (1 - s^(n-2)) / (1 - s^2) without the 0/0 at s = 1
    acc = np.zeros_like(s) if isinstance(s, np.ndarray) else 0.0
    for _ in range(n - 2):
        acc = acc * s + 1.0
    return acc / (1.0 + s)


def bracket_expr(s, params: BoundParams):
    """Scalar-branch bracket at s in (0, 1]; scalar or array."""
    arr = np.asarray(s, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError("bracket_expr needs 0 < s <= 1")
    n = params.n
    val = 1.0 - params.deficit * _geometric_quotient(arr, n) / arr ** (n - 2)
    return float(val) if np.ndim(val) == 0 else val


def bracket_limit(params: BoundParams) -> float:
    """bracket(1) = 1 - (n-2)(1-m^2)/(2m^2)."""
    return 1.0 - (params.n - 2) * params.deficit / 2.0


def envelope_branches(f: float, params: BoundParams) -> Tuple[float, float]:
    """The scalar-branch and Ricci-branch lower bounds on f'^2 at height f."""
    m = params.m
    if not 0.0 < f <= m:
        raise DomainError(f"envelope needs 0 < f <= m = {m!r}, got {f!r}")
    s = f / m
    # scalar branch written as m^2 (1 - s^2) * bracket(s): no cancellation near f = m
    scalar = m * m * (1.0 - s) * (1.0 + s) * bracket_expr(s, params)
    ricci = params.eps * (m - f) * (m + f)
    return scalar, ricci


def envelope(f: float, params: BoundParams) -> float:
    """M_eps(f): the larger of the two lower bounds on f'^2."""
    return max(envelope_branches(f, params))


def h_of_m(params: BoundParams) -> float:
    """Largest root in (0, 1) of bracket(s) = eps; 0 when bracket stays above eps.

    Raises ThresholdViolationError when bracket(1) <= eps.  At m = 1 the
    bracket is identically 1 and h = 0 for every eps.
    """
    eps = params.eps
    if params.m == 1.0:
        return 0.0
    limit = bracket_limit(params)
    if limit <= eps:
        raise ThresholdViolationError(
            f"bracket(1) = {limit!r} <= eps = {eps!r} for n={params.n}, m={params.m!r}")

    def excess(s):
        return bracket_expr(s, params) - eps

    upper = 1.0
    if excess(ROOT_START) <= 0.0:
        lower = ROOT_START
    else:
        upper, lower = ROOT_START, None
        k0 = 1
        while lower is None:
            s = ROOT_START * ROOT_RATIO ** np.arange(k0, k0 + ROOT_CHUNK)
            s = s[s > 0.0]
            if len(s) == 0:
                return 0.0
            vals = bracket_expr(s, params) - eps
            below = np.nonzero(vals <= 0.0)[0]
            if len(below):
                i = int(below[0])
                lower = float(s[i])
                upper = float(s[i - 1]) if i > 0 else upper
            else:
                upper = float(s[-1])
                k0 += ROOT_CHUNK
    if excess(lower) == 0.0:
        return lower
    return float(brentq(excess, lower, upper, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                        maxiter=200))


@dataclass(frozen=True)
class BoundResult:
    params: BoundParams
    h: float
    H: float
    lo: float  # m^(n-1) W(n)
    hi: float  # m^(n-1) eps^(-1/2) W(n)
    shortcut_applies: bool

    @property
    def sandwich(self) -> Tuple[float, float]:
        return (self.lo, self.hi)

    @property
    def in_sandwich(self) -> bool:
        slack = 1e-9 * self.hi
        return self.lo - slack <= self.H <= self.hi + slack


def sandwich_bounds(params: BoundParams) -> Tuple[float, float]:
    w = wallis_W(params.n)
    scale = params.m ** (params.n - 1)
    return scale * w, scale * w / math.sqrt(params.eps)


def H_of_m(params: BoundParams, quad: Optional[QuadratureConfig] = None) -> BoundResult:
    """Bound integral H(m) for the half-volume int_0^r f^(n-1) dt."""
    n, eps, m = params.n, params.eps, params.m
    h = h_of_m(params)
    if h > 0.0:
        probe = np.linspace(h, 1.0, 66)[1:]
        worst = float(np.min(bracket_expr(probe, params)))
        if worst < eps - BRACKET_CHECK_TOL:
            raise ConsistencyError(f"bracket drops to {worst!r} < eps on (h, 1); h={h!r} is not the largest root")
    p = n - 1
    lower_piece = integrate_arcsine(lambda t: t ** p, 0.0, h, quad) / math.sqrt(eps)

    def upper(t):
        return t ** p / math.sqrt(bracket_expr(t, params))

    upper_piece = integrate_arcsine(upper, h, 1.0, quad)
    lo, hi = sandwich_bounds(params)
    return BoundResult(params=params, h=h, H=m ** p * (lower_piece + upper_piece),
                       lo=lo, hi=hi, shortcut_applies=small_m_shortcut(params))


def small_m_shortcut(params: BoundParams) -> bool:
    """True when m^(n-1) <= sqrt(eps): the Ricci branch alone bounds the half-volume by W(n)."""
    return params.m ** (params.n - 1) <= math.sqrt(params.eps)


def admissible_m_range(n: int, eps: float) -> Tuple[float, float]:
    """m values not covered by the shortcut: [eps^(1/(2(n-1))), 1]."""
    return eps ** (1.0 / (2.0 * (n - 1))), 1.0


def hprime_lower_bound(n: int, eps: float) -> float:
    """G(n, eps) = (n-1) eps^(1/(n-1)) W(n) - eps^(-3/2) Q(n); G > 0 forces H'(m) > 0."""
    if int(n) != n or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    return (n - 1) * eps ** (1.0 / (n - 1)) * wallis_W(n) - eps ** -1.5 * q_integral(n)
