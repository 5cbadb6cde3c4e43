"""Critical-eps searches and the one-shot volume certificate.

Three thresholds are computed for a dimension n:

* ``envelope``: smallest eps for which every envelope football with
  m in [eps^(1/(2(n-1))), 1] has volume <= vol(S^n).
* ``H_comparison``: smallest eps for which H(m) <= H(1) = W(n) on the same
  m range (m where h(m) is undefined fall back to the sandwich upper bound).
* ``hprime``: the root of G(n, eps), above which H is increasing in m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .bounds import (BoundParams, H_of_m, admissible_m_range, bracket_limit,
                     hprime_lower_bound, sandwich_bounds)
from .errors import ContradictionError, DomainError
from .profile import envelope_volume
from .quadrature import QuadratureConfig
from .search import bisect_predicate, bisect_sign, golden_section_max
from .special import inequality5_margin, wallis_W

KINDS = ("envelope", "H_comparison", "hprime")
SEARCH_LO = 0.01
SEARCH_HI = 0.999
PREDICATE_RTOL = 1e-9
DEFAULT_M_GRID = 256
DEFAULT_BISECT_TOL = 1e-4
DEFAULT_GOLDEN_TOL = 1e-8
HPRIME_TOL = 1e-12

# reported alongside n = 3 envelope results
REFERENCE_EPS0_INTERVAL = (0.134, 0.135)


@dataclass(frozen=True)
class SearchSettings:
    m_grid: int = DEFAULT_M_GRID
    bisect_tol: float = DEFAULT_BISECT_TOL
    golden_tol: float = DEFAULT_GOLDEN_TOL
    quad: Optional[QuadratureConfig] = None

    def doubled(self) -> "SearchSettings":
        """All grids doubled, all step tolerances halved."""
        return SearchSettings(m_grid=2 * self.m_grid, bisect_tol=self.bisect_tol / 2,
                              golden_tol=self.golden_tol / 2, quad=self.quad)


@dataclass(frozen=True)
class Supremum:
    value: float  # sup over m of the normalized quantity (1 means equality with the sphere)
    m: float
    fallback_m: Tuple[float, ...] = ()


@dataclass(frozen=True)
class ThresholdResult:
    n: int
    kind: str
    eps_lo: float
    eps_hi: float
    inner_max_m: float
    refinement_trace: List[Tuple[float, float]] = field(default_factory=list)
    found: bool = True
    note: str = ""

    @property
    def width(self) -> float:
        return self.eps_hi - self.eps_lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.eps_lo + self.eps_hi)

    def reference_comparison(self) -> Tuple[bool, bool]:
        """(bracket inside the reference interval, bracket intersects it)."""
        lo, hi = REFERENCE_EPS0_INTERVAL
        return (lo <= self.eps_lo and self.eps_hi <= hi,
                self.eps_lo <= hi and self.eps_hi >= lo)


def sup_over_m(value: Callable[[float], float], n: int, eps: float,
               settings: SearchSettings) -> Tuple[float, float]:
    """Coarse grid over the admissible m range, then golden section around the best cell."""
    lo, hi = admissible_m_range(n, eps)
    grid = np.linspace(lo, hi, settings.m_grid)
    vals = np.array([value(m) for m in grid])
    i = int(np.argmax(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    m_star, v_star = golden_section_max(value, a, b, settings.golden_tol)
    if vals[i] > v_star:
        return float(vals[i]), float(grid[i])
    return float(v_star), float(m_star)


def envelope_supremum(n: int, eps: float, settings: SearchSettings = SearchSettings()) -> Supremum:
    """sup_m envelope volume / vol(S^n)."""
    def ratio(m):
        return envelope_volume(BoundParams(n, eps, min(m, 1.0)), settings.quad).ratio

    v, m = sup_over_m(ratio, n, eps, settings)
    return Supremum(value=v, m=m)


def h_value(n: int, eps: float, m: float, quad: Optional[QuadratureConfig] = None) -> Tuple[float, bool]:
    """(H(m) or, where h(m) is undefined, the sandwich upper bound; used_fallback)."""
    params = BoundParams(n, eps, min(m, 1.0))
    if params.m < 1.0 and bracket_limit(params) <= eps:
        return sandwich_bounds(params)[1], True
    return H_of_m(params, quad).H, False


def H_supremum(n: int, eps: float, settings: SearchSettings = SearchSettings()) -> Supremum:
    """sup_m H(m) / W(n), recording the m values that needed the sandwich fallback."""
    w = wallis_W(n)
    fallback = []

    def ratio(m):
        v, used = h_value(n, eps, m, settings.quad)
        if used:
            fallback.append(float(m))
        return v / w

    v, m = sup_over_m(ratio, n, eps, settings)
    return Supremum(value=v, m=m, fallback_m=tuple(sorted(set(fallback))))


def _bisect_threshold(n: int, kind: str, sup: Callable[[float], Supremum],
                      settings: SearchSettings) -> ThresholdResult:
    trace: List[Tuple[float, float]] = []
    cache = {}

    def evaluate(eps):
        if eps not in cache:
            s = sup(eps)
            cache[eps] = s
            trace.append((float(eps), s.value))
        return cache[eps]

    def pred(eps):
        return evaluate(eps).value <= 1.0 + PREDICATE_RTOL

    lo_ok, hi_ok = pred(SEARCH_LO), pred(SEARCH_HI)
    if lo_ok or not hi_ok:
        note = ("predicate already holds at eps=%g" % SEARCH_LO if lo_ok
                else "predicate fails at eps=%g" % SEARCH_HI)
        return ThresholdResult(n=n, kind=kind, eps_lo=SEARCH_LO, eps_hi=SEARCH_HI,
                               inner_max_m=evaluate(SEARCH_HI).m, refinement_trace=trace,
                               found=False, note=note)
    lo, hi = bisect_predicate(pred, SEARCH_LO, SEARCH_HI, settings.bisect_tol)
    mid = evaluate(0.5 * (lo + hi))
    return ThresholdResult(n=n, kind=kind, eps_lo=lo, eps_hi=hi, inner_max_m=mid.m,
                           refinement_trace=trace)


def epsilon_star_envelope(n: int, settings: SearchSettings = SearchSettings()) -> ThresholdResult:
    """eps bracket where sup_m envelope volume crosses vol(S^n)."""
    _check_n(n)
    return _bisect_threshold(n, "envelope", lambda e: envelope_supremum(n, e, settings), settings)


def epsilon_star_H(n: int, settings: SearchSettings = SearchSettings()) -> ThresholdResult:
    """eps bracket where sup_m H(m) crosses H(1) = W(n)."""
    _check_n(n)
    return _bisect_threshold(n, "H_comparison", lambda e: H_supremum(n, e, settings), settings)


def epsilon_from_hprime(n: int, tol: float = HPRIME_TOL) -> float:
    """Root of G(n, eps) in (0, 1); G > 0 for every larger eps."""
    _check_n(n)
    g1 = hprime_lower_bound(n, 1.0)
    if g1 <= 0.0:
        raise ContradictionError(f"G({n}, 1) = {g1!r} <= 0")
    return bisect_sign(lambda e: hprime_lower_bound(n, e), 1e-8, 1.0, tol)


def hprime_threshold(n: int, tol: float = HPRIME_TOL) -> ThresholdResult:
    root = epsilon_from_hprime(n, tol)
    return ThresholdResult(n=n, kind="hprime", eps_lo=root - tol / 2, eps_hi=root + tol / 2,
                           inner_max_m=1.0, refinement_trace=[(root, hprime_lower_bound(n, root))])


def find_threshold(n: int, kind: str, settings: SearchSettings = SearchSettings()) -> ThresholdResult:
    if kind == "envelope":
        return epsilon_star_envelope(n, settings)
    if kind == "H_comparison":
        return epsilon_star_H(n, settings)
    if kind == "hprime":
        return hprime_threshold(n)
    raise DomainError(f"unknown threshold kind {kind!r}; expected one of {KINDS}")


@dataclass(frozen=True)
class Certificate:
    n: int
    eps: float
    shortcut_m_max: float  # every m <= this is settled by the shortcut
    sweep_sup: float  # sup_m H(m) / W(n) over [shortcut_m_max, 1]
    sweep_margin: float  # 1 - sweep_sup
    worst_m: float
    fallback_m: Tuple[float, ...]
    hprime_G: float
    inequality_margin: float
    certified: bool

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "not certified"

    @property
    def failures(self) -> List[str]:
        out = []
        if self.hprime_G <= 0.0:
            out.append(f"G(n, eps) = {self.hprime_G:.6g} <= 0")
        if self.sweep_margin < -PREDICATE_RTOL:
            out.append(f"H(m)/W(n) reaches {self.sweep_sup:.12g} at m = {self.worst_m:.12g}")
        return out


def certify_theorem(n: int, eps: float, settings: SearchSettings = SearchSettings()) -> Certificate:
    """Combine the shortcut region, the H(m) <= W(n) sweep and the sign of G(n, eps)."""
    _check_n(n)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    sup = H_supremum(n, eps, settings)
    g = hprime_lower_bound(n, eps)
    margin = 1.0 - sup.value
    certified = g > 0.0 and margin >= -PREDICATE_RTOL
    return Certificate(n=n, eps=float(eps), shortcut_m_max=admissible_m_range(n, eps)[0],
                       sweep_sup=sup.value, sweep_margin=margin, worst_m=sup.m,
                       fallback_m=sup.fallback_m, hprime_G=g,
                       inequality_margin=inequality5_margin(n), certified=certified)


def _check_n(n):
    if int(n) != n or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
