"""Candidate football profiles.

The envelope profile solves f' = sqrt(M_eps(f)) from the pole up to the
equator f = m and mirrors it.  It is the volume-maximizing candidate
allowed by the two monotone quantities, but nothing guarantees it is
admissible.  The sine football f = A sin(sqrt(eps) t) is admissible and
serves as a lower-bound witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import BoundParams, bracket_expr, bracket_limit, h_of_m
from .errors import DomainError, ThresholdViolationError, WarpVolError
from .quadrature import QuadratureConfig, integrate, integrate_arcsine
from .special import sphere_volume
from .warped import WarpProfile

MIN_GRID = 256


def _slope_factor(s: float, params: BoundParams) -> float:
    """max(bracket(s), eps): the envelope divided by m^2 (1 - s^2)."""
    if s <= 0.0:
        return params.eps
    return max(bracket_expr(min(s, 1.0), params), params.eps)


def branch_switch(params: BoundParams) -> Optional[float]:
    """s = f/m where the two envelope branches cross, or None if one branch wins throughout."""
    if params.m == 1.0:
        return None
    if bracket_limit(params) <= params.eps:
        return None
    try:
        h = h_of_m(params)
    except ThresholdViolationError:
        return None
    return h if h > 0.0 else None


@dataclass(frozen=True)
class EnvelopeProfile:
    params: BoundParams
    phi: np.ndarray  # f = m sin(phi) on the rising half
    f_grid: np.ndarray
    t_of_f: np.ndarray
    r: float
    switch_s: Optional[float]  # branch switch point in s = f/m
    switch_t: Optional[float]
    assembled: WarpProfile

    @property
    def scalar_branch_mask(self) -> np.ndarray:
        """Samples of the assembled profile where the scalar branch is the active bound."""
        return self._branch_mask(scalar=True)

    @property
    def ricci_branch_mask(self) -> np.ndarray:
        return self._branch_mask(scalar=False)

    def _branch_mask(self, scalar):
        s = self.assembled.f / self.params.m
        if self.switch_s is None:
            # one branch throughout; decide which at the equator
            scalar_wins = self.params.m == 1.0 or bracket_limit(self.params) > self.params.eps
            return np.full(s.shape, scalar_wins == scalar)
        return s > self.switch_s if scalar else s < self.switch_s


def build_envelope_profile(params: BoundParams, grid_size: int = 1024,
                           quad: Optional[QuadratureConfig] = None) -> EnvelopeProfile:
    """Integrate dt/df = 1/sqrt(M_eps(f)) from the pole to the equator and mirror.

    With f = m sin(phi) the equator's square-root turning point is absorbed:
    dt/dphi = 1/sqrt(max(bracket(sin phi), eps)) is bounded on [0, pi/2].
    """
    if grid_size < MIN_GRID:
        raise DomainError(f"grid_size must be >= {MIN_GRID}, got {grid_size}")
    n, eps, m = params.n, params.eps, params.m
    switch = branch_switch(params)
    phi = np.linspace(0.0, 0.5 * math.pi, grid_size + 1)
    if switch is not None:
        phi = np.unique(np.append(phi, math.asin(switch)))

    def rate(p):
        return 1.0 / math.sqrt(_slope_factor(math.sin(p), params))

    steps = [integrate(rate, a, b, quad) for a, b in zip(phi[:-1], phi[1:])]
    t = np.concatenate(([0.0], np.cumsum(steps)))
    f = m * np.sin(phi)
    f[0] = 0.0
    f[-1] = m
    r = float(t[-1])

    factor = np.array([_slope_factor(math.sin(p), params) for p in phi])
    fp = m * np.cos(phi) * np.sqrt(factor)
    fp[-1] = 0.0
    fpp = _second_derivative(f, params)

    t_full = np.concatenate((t, 2.0 * r - t[-2::-1]))
    f_full = np.concatenate((f, f[-2::-1]))
    fp_full = np.concatenate((fp, -fp[-2::-1]))
    fpp_full = np.concatenate((fpp, fpp[-2::-1]))
    assembled = WarpProfile(n=n, t=t_full, f=f_full, fp=fp_full, fpp=fpp_full,
                            tag=f"envelope(n={n}, eps={eps!r}, m={m!r})")
    if np.any(fp[1:-1] <= 0.0):
        raise WarpVolError("envelope vanished inside the rising half")
    switch_t = None
    if switch is not None:
        switch_t = float(t[int(np.argmin(np.abs(phi - math.asin(switch))))])
    return EnvelopeProfile(params=params, phi=phi, f_grid=f, t_of_f=t, r=r,
                           switch_s=switch, switch_t=switch_t, assembled=assembled)


def _second_derivative(f, params):
    # f'' = (1/2) dM/df on whichever branch is active
    n, eps, m = params.n, params.eps, params.m
    c = m ** (n - 2) * (1.0 - m * m)
    out = np.empty_like(f)
    for i, fi in enumerate(f):
        if fi <= 0.0:
            out[i] = 0.0
            continue
        s = min(fi / m, 1.0)
        if bracket_expr(s, params) >= eps:
            out[i] = -fi + 0.5 * (n - 2) * c / fi ** (n - 1)
        else:
            out[i] = -eps * fi
    return out


@dataclass(frozen=True)
class EnvelopeVolume:
    half_integral: float  # int_0^m f^(n-1) / sqrt(M_eps(f)) df
    volume: float  # 2 omega_(n-1) * half_integral
    ratio: float  # volume / omega_n


def envelope_volume(params: BoundParams, quad: Optional[QuadratureConfig] = None) -> EnvelopeVolume:
    """Volume of the envelope football, by quadrature in s = f/m."""
    n, m = params.n, params.m
    switch = branch_switch(params)
    p = n - 1

    def g(s):
        return s ** p / math.sqrt(_slope_factor(s, params))

    half = m ** p * integrate_arcsine(g, 0.0, 1.0, quad,
                                      points=None if switch is None else [switch])
    vol = 2.0 * sphere_volume(n - 1) * half
    return EnvelopeVolume(half_integral=half, volume=vol, ratio=vol / sphere_volume(n))


def sine_football_amplitude(n: int, eps: float) -> float:
    """A with A^2 = (n-2)/(2(n-1) - 2 eps); the scalar margin at the equator is n - 2."""
    return math.sqrt((n - 2) / (2.0 * (n - 1) - 2.0 * eps))


def sine_football(n: int, eps: float, grid: int = 2001) -> WarpProfile:
    """f(t) = A sin(sqrt(eps) t) on [0, pi/sqrt(eps)]."""
    if int(n) != n or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    A = sine_football_amplitude(n, eps)
    k = math.sqrt(eps)

    def exact(t):
        t = np.asarray(t, dtype=float)
        s = np.sin(k * t)
        return A * s, A * k * np.cos(k * t), -A * eps * s

    return WarpProfile.from_function(n, math.pi / k, exact, grid,
                                     tag=f"sine-football(eps={eps!r}, A={A!r})")


def sine_football_ratio(n: int, eps: float) -> float:
    """Closed-form volume ratio A^(n-1) / sqrt(eps)."""
    return sine_football_amplitude(n, eps) ** (n - 1) / math.sqrt(eps)
