"""Gamma-function machinery: log-gamma, sphere volumes, Wallis-type integrals.

W(n) and Q(n) are the two integrals

    W(n) = int_0^1 t^(n-1) / sqrt(1 - t^2) dt
    Q(n) = int_0^1 t (1 - t^(n-2)) / (1 - t^2)^(3/2) dt

Each has a closed form built from Gamma ratios (split by the parity of n) and
a quadrature route; the two are kept independent so they can check each
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import ConsistencyError, DomainError
from .quadrature import QuadratureConfig, integrate_arcsine

SQRT_PI = math.sqrt(math.pi)

# Lanczos approximation, g = 671/128 (Numerical Recipes, 3rd ed.).
_LANCZOS_G = 671.0 / 128.0
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COF = (
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005

CROSS_CHECK_TOL = 1e-8


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0."""
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma needs finite x > 0, got {x}")
    tmp = x + _LANCZOS_G
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = x
    for c in _LANCZOS_COF:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_2PI * ser / x)


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a) / Gamma(b), formed in log space."""
    return math.exp(log_gamma(a) - log_gamma(b))


def sphere_volume(n: int) -> float:
    """Volume omega_n of the unit n-sphere S^n in R^(n+1)."""
    if int(n) != n or n < 1:
        raise DomainError(f"sphere_volume needs integer n >= 1, got {n}")
    half = (n + 1) / 2.0
    return 2.0 * math.exp(half * math.log(math.pi) - log_gamma(half))


def wallis_W(n: int) -> float:
    """Closed form of W(n) = int_0^1 t^(n-1)/sqrt(1-t^2) dt, n >= 2."""
    _check_int(n, 2, "wallis_W")
    if n % 2 == 0:
        k = (n - 2) // 2
        return 0.5 * SQRT_PI * gamma_ratio(k + 1.0, k + 1.5)
    k = (n - 1) // 2
    return 0.5 * SQRT_PI * gamma_ratio(k + 0.5, k + 1.0)


def wallis_W_quad(n: int, quad: Optional[QuadratureConfig] = None) -> float:
    """W(n) by quadrature."""
    _check_int(n, 2, "wallis_W_quad")
    return integrate_arcsine(lambda t: t ** (n - 1), quad=quad)


def q_integral(n: int) -> float:
    """Closed form of Q(n) = int_0^1 t(1-t^(n-2))/(1-t^2)^(3/2) dt, n >= 3."""
    _check_int(n, 3, "q_integral")
    if n % 2 == 0:
        k = (n - 2) // 2
        terms = [gamma_ratio(j + 1.0, j + 1.5) for j in range(k)]
        return 0.5 * SQRT_PI * math.fsum(terms)
    k = (n - 1) // 2
    terms = [gamma_ratio(j + 0.5, j + 1.0) for j in range(1, k)]
    return 0.5 * SQRT_PI * math.fsum(terms) + (math.pi - 2.0) / 2.0


def geometric_quotient(t: float, n: int) -> float:
    """(1 - t^(n-2)) / (1 - t^2) written as sum_{i<n-2} t^i / (1 + t); finite at t = 1."""
    acc = 0.0
    for _ in range(n - 2):
        acc = acc * t + 1.0
    return acc / (1.0 + t)


def q_integral_quad(n: int, quad: Optional[QuadratureConfig] = None) -> float:
    """Q(n) by quadrature, using the cancellation-free quotient."""
    _check_int(n, 3, "q_integral_quad")
    return integrate_arcsine(lambda t: t * geometric_quotient(t, n), quad=quad)


def inequality5_closed(n: int) -> float:
    """(n-1) W(n) - Q(n) from the Gamma closed forms."""
    _check_int(n, 3, "inequality5_closed")
    return (n - 1) * wallis_W(n) - q_integral(n)


def inequality5_quad(n: int, quad: Optional[QuadratureConfig] = None) -> float:
    """(n-1) W(n) - Q(n) from a single quadrature of the combined integrand."""
    _check_int(n, 3, "inequality5_quad")
    return integrate_arcsine(
        lambda t: (n - 1) * t ** (n - 1) - t * geometric_quotient(t, n), quad=quad)


def inequality5_margin(n: int, quad: Optional[QuadratureConfig] = None) -> float:
    """Margin of (n-1) W(n) > Q(n).

    Computed from the closed forms and cross-checked against quadrature;
    raises ConsistencyError if the two disagree by more than 1e-8.
    """
    closed = inequality5_closed(n)
    numeric = inequality5_quad(n, quad)
    if abs(closed - numeric) > CROSS_CHECK_TOL:
        raise ConsistencyError(
            f"inequality margin for n={n}: closed {closed!r} vs quadrature {numeric!r}")
    return closed


@dataclass(frozen=True)
class GammaRatioPoint:
    x: float
    lhs: float
    rhs: float
    margin: float


def lemma1_lhs(x: float) -> float:
    """sqrt(x - 1/2) * Gamma(x) / Gamma(x + 1/2)."""
    if x < 0.5:
        raise DomainError(f"need x >= 0.5, got {x}")
    return math.sqrt(x - 0.5) * gamma_ratio(x, x + 0.5)


def lemma1_margin(x: float) -> GammaRatioPoint:
    """Both sides of sqrt(x-1/2) G(x)/G(x+1/2) < sqrt(x+1/2) G(x+1)/G(x+3/2)."""
    x = float(x)
    lhs = lemma1_lhs(x)
    rhs = math.sqrt(x + 0.5) * gamma_ratio(x + 1.0, x + 1.5)
    return GammaRatioPoint(x=x, lhs=lhs, rhs=rhs, margin=rhs - lhs)


def lemma1_grid(x_max: float = 200.0, ratio: float = 1.04) -> np.ndarray:
    """Geometric grid 0.5 * ratio**j, capped at x_max (x_max itself included)."""
    if ratio <= 1.0:
        raise DomainError("grid ratio must exceed 1")
    count = int(math.floor(math.log(x_max / 0.5) / math.log(ratio))) + 1
    grid = 0.5 * ratio ** np.arange(count)
    if grid[-1] < x_max:
        grid = np.append(grid, x_max)
    return grid


@dataclass(frozen=True)
class Lemma1Sweep:
    points: List[GammaRatioPoint]
    min_margin: float
    argmin_x: float
    lhs_nondecreasing: bool

    @property
    def holds(self) -> bool:
        return self.min_margin > 0 and self.lhs_nondecreasing


def lemma1_sweep(x_max: float = 200.0, ratio: float = 1.04) -> Lemma1Sweep:
    points = [lemma1_margin(x) for x in lemma1_grid(x_max, ratio)]
    margins = [p.margin for p in points]
    i = int(np.argmin(margins))
    lhs = np.array([p.lhs for p in points])
    return Lemma1Sweep(points=points, min_margin=margins[i], argmin_x=points[i].x,
                       lhs_nondecreasing=bool(np.all(np.diff(lhs) >= 0.0)))


@dataclass(frozen=True)
class TelescopingResult:
    k: int
    even_sum: float  # sum_{j=0}^{k-1} 1/sqrt(j + 1/2)
    even_margin: float  # 2 sqrt(k) - even_sum
    odd_sum: float  # sqrt(2) + sum_{j=1}^{k-1} 1/sqrt(j)
    odd_margin: float  # 2 sqrt(k) - odd_sum
    constant: float
    constant_margin: float  # sqrt(2) - constant

    @property
    def holds(self) -> tuple:
        return (self.even_margin >= 0.0, self.odd_margin >= 0.0)


def odd_case_constant() -> float:
    """((pi - 2)/sqrt(pi)) / (sqrt(2) Gamma(5/2)/Gamma(3)), approximately 0.685."""
    return ((math.pi - 2.0) / SQRT_PI) / (math.sqrt(2.0) * gamma_ratio(2.5, 3.0))


def telescoping_check(k: int) -> TelescopingResult:
    """Evaluate both telescoping partial-sum bounds at a single k >= 1."""
    _check_int(k, 1, "telescoping_check")
    j = np.arange(k, dtype=float)
    even = math.fsum(1.0 / np.sqrt(j + 0.5))
    odd = math.sqrt(2.0) + math.fsum(1.0 / np.sqrt(j[1:]))
    bound = 2.0 * math.sqrt(k)
    c = odd_case_constant()
    return TelescopingResult(k=k, even_sum=even, even_margin=bound - even,
                             odd_sum=odd, odd_margin=bound - odd,
                             constant=c, constant_margin=math.sqrt(2.0) - c)


@dataclass(frozen=True)
class TelescopingSweep:
    k_max: int
    even_min_margin: float
    even_argmin: int
    odd_min_margin: float
    odd_argmin: int

    @property
    def holds(self) -> bool:
        return self.even_min_margin >= 0.0 and self.odd_min_margin >= 0.0


def telescoping_sweep(k_max: int) -> TelescopingSweep:
    """Minimum margins of both telescoping bounds over every k in [1, k_max]."""
    _check_int(k_max, 1, "telescoping_sweep")
    k = np.arange(1, k_max + 1, dtype=float)
    bound = 2.0 * np.sqrt(k)
    even = np.cumsum(1.0 / np.sqrt(k - 0.5))
    # odd partial sums: sqrt(2) + sum_{j=1}^{k-1} 1/sqrt(j)
    odd = math.sqrt(2.0) + np.concatenate(([0.0], np.cumsum(1.0 / np.sqrt(k[:-1]))))
    em = bound - even
    om = bound - odd
    ie, io = int(np.argmin(em)), int(np.argmin(om))
    return TelescopingSweep(k_max=k_max, even_min_margin=float(em[ie]), even_argmin=ie + 1,
                            odd_min_margin=float(om[io]), odd_argmin=io + 1)


def _check_int(n, lowest, name):
    if int(n) != n or n < lowest:
        raise DomainError(f"{name} needs integer n >= {lowest}, got {n}")
