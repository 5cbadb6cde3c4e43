"""Curvature and volume of axisymmetric metrics g = dt^2 + f(t)^2 dsigma^2 on [0, a] x S^(n-1).

For a warping function f the Ricci curvature in the radial direction and on
unit vectors tangent to the spheres is

    Ric(dt, dt) = -(n-1) f''/f
    Ric(v, v)   = (n-2)(1 - f'^2)/f^2 - f''/f

and the scalar curvature is their trace.  The three admissibility
constraints checked here are

    (1)  -f''/f >= eps
    (2)  (n-2)(1 - f'^2)/f^2 - f''/f >= (n-1) eps
    (3)  -2 f''/f + (n-2)(1 - f'^2)/f^2 >= n

i.e. radial Ricci >= (n-1) eps, spherical Ricci >= (n-1) eps and
R >= n(n-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate as spi
from scipy.interpolate import CubicSpline

from .errors import (DegenerateProfileError, DomainError, PoleExclusionError,
                     PreconditionError, ProfileValidationError)
from .quadrature import QuadratureConfig, integrate
from .special import sphere_volume

MIN_INTERIOR_SAMPLES = 64
ENDPOINT_TOL = 1e-9
IMPLICATION_TOL = 1e-8

# t -> (f, f', f'') evaluated on an array of t values
ExactDerivatives = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True, eq=False)
class WarpProfile:
    """Sampled warping function on [0, a] for dimension n.

    Derivatives come from, in order of preference: explicit ``fp``/``fpp``
    arrays, the ``exact`` callable, or finite differences of the samples.
    """

    n: int
    t: np.ndarray
    f: np.ndarray
    fp: Optional[np.ndarray] = None
    fpp: Optional[np.ndarray] = None
    tag: Optional[str] = None
    exact: Optional[ExactDerivatives] = field(default=None, repr=False)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        f = np.asarray(self.f, dtype=float)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "f", f)
        for name in ("fp", "fpp"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=float)
                if arr.shape != t.shape:
                    raise ProfileValidationError(f"{name} has shape {arr.shape}, expected {t.shape}")
                object.__setattr__(self, name, arr)
        self._validate()

    def _validate(self):
        t, f = self.t, self.f
        if int(self.n) != self.n or self.n < 3:
            raise ProfileValidationError(f"dimension n must be an integer >= 3, got {self.n}")
        if t.ndim != 1 or t.shape != f.shape:
            raise ProfileValidationError("t and f must be 1-d arrays of equal length")
        if len(t) < MIN_INTERIOR_SAMPLES + 2:
            raise ProfileValidationError(
                f"need at least {MIN_INTERIOR_SAMPLES} interior samples, got {len(t) - 2}")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(f))):
            raise ProfileValidationError("non-finite sample")
        if abs(t[0]) > ENDPOINT_TOL:
            raise ProfileValidationError(f"t must start at 0, starts at {t[0]!r}")
        steps = np.diff(t)
        if np.any(steps <= 0):
            i = int(np.argmax(steps <= 0)) + 1
            raise ProfileValidationError(f"t not strictly increasing at sample {i}")
        if abs(f[0]) > ENDPOINT_TOL or abs(f[-1]) > ENDPOINT_TOL:
            raise ProfileValidationError(
                f"f must vanish at both ends, got f(0)={f[0]!r}, f(a)={f[-1]!r}")
        if np.any(f[1:-1] <= 0):
            i = int(np.argmax(f[1:-1] <= 0)) + 1
            raise ProfileValidationError(f"f must be positive in the interior (sample {i})")

    @property
    def a(self) -> float:
        return float(self.t[-1])

    @property
    def pole_window(self) -> float:
        """Width of the window around each pole where curvature is not evaluated."""
        return max(4.0 * float(np.max(np.diff(self.t))), 1e-4 * self.a)

    def derivatives(self) -> Tuple[np.ndarray, np.ndarray]:
        """(f', f'') at every sample."""
        if self.fp is not None and self.fpp is not None:
            return self.fp, self.fpp
        if self.exact is not None:
            _, fp, fpp = self.exact(self.t)
            return np.asarray(fp, dtype=float), np.asarray(fpp, dtype=float)
        return finite_difference_derivatives(self.t, self.f)

    def interior_mask(self) -> np.ndarray:
        d = self.pole_window
        return (self.t >= d) & (self.t <= self.a - d)

    @classmethod
    def from_function(cls, n: int, a: float, exact: ExactDerivatives, grid: int = 10001,
                      tag: Optional[str] = None) -> "WarpProfile":
        """Sample an analytic profile on a uniform grid of ``grid`` points."""
        t = np.linspace(0.0, a, grid)
        f, _, _ = exact(t)
        f = np.asarray(f, dtype=float).copy()
        f[0] = f[-1] = 0.0
        return cls(n=n, t=t, f=f, tag=tag, exact=exact)

    def scaled(self, c: float) -> "WarpProfile":
        """The profile of the metric c^2 g: (t, f) -> (c t, c f)."""
        exact = None
        if self.exact is not None:
            base = self.exact

            def exact(t):
                f, fp, fpp = base(np.asarray(t) / c)
                return c * np.asarray(f), np.asarray(fp), np.asarray(fpp) / c
        fp = None if self.fp is None else self.fp
        fpp = None if self.fpp is None else self.fpp / c
        return WarpProfile(n=self.n, t=c * self.t, f=c * self.f, fp=fp, fpp=fpp,
                           tag=self.tag, exact=exact)


def sphere_profile(n: int, grid: int = 10001, scale: float = 1.0, sampled: bool = False) -> WarpProfile:
    """f = scale * sin(t) on [0, pi]; ``sampled=True`` drops the exact derivatives."""

    def exact(t):
        t = np.asarray(t, dtype=float)
        s = np.sin(t)
        return scale * s, scale * np.cos(t), -scale * s

    prof = WarpProfile.from_function(n, math.pi, exact, grid, tag=f"sin(scale={scale!r})")
    if sampled:
        return WarpProfile(n=n, t=prof.t, f=prof.f, tag=prof.tag)
    return prof


# ----------------------------------------------------------------------------
# finite differences

def finite_difference_derivatives(t: np.ndarray, f: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """First and second derivatives of samples on a (possibly non-uniform) grid.

    Five-point stencils (4th order for f' and, on uniform grids, for f'') in
    the interior; three-point stencils at the two nodes next to each end.
    """
    t = np.asarray(t, dtype=float)
    f = np.asarray(f, dtype=float)
    n = len(t)
    if n < 5:
        raise ProfileValidationError("need at least 5 samples for finite differences")
    fp = np.empty(n)
    fpp = np.empty(n)

    idx = np.arange(2, n - 2)
    offsets = np.stack([t[idx + k] - t[idx] for k in range(-2, 3)], axis=1)
    h = 0.5 * (t[idx + 1] - t[idx - 1])
    x = offsets / h[:, None]
    powers = np.stack([x ** j for j in range(5)], axis=1)  # (m, j, k)
    rhs = np.zeros((len(idx), 5, 2))
    rhs[:, 1, 0] = 1.0
    rhs[:, 2, 1] = 2.0
    w = np.linalg.solve(powers, rhs)
    vals = np.stack([f[idx + k] for k in range(-2, 3)], axis=1)
    fp[idx] = np.einsum("mk,mk->m", w[:, :, 0], vals) / h
    fpp[idx] = np.einsum("mk,mk->m", w[:, :, 1], vals) / h ** 2

    for i in (1, n - 2):
        fp[i], fpp[i] = _three_point(t[i - 1:i + 2], f[i - 1:i + 2], t[i])
    fp[0], fpp[0] = _three_point(t[:3], f[:3], t[0])
    fp[-1], fpp[-1] = _three_point(t[-3:], f[-3:], t[-1])
    return fp, fpp


def _three_point(ts, fs, at):
    # derivative of the interpolating quadratic
    x0, x1, x2 = ts
    y0, y1, y2 = fs
    d01 = (y1 - y0) / (x1 - x0)
    d12 = (y2 - y1) / (x2 - x1)
    second = 2.0 * (d12 - d01) / (x2 - x0)
    first = d01 + 0.5 * second * (2 * at - x0 - x1)
    return first, second


# ----------------------------------------------------------------------------
# curvature

@dataclass(frozen=True)
class Curvature:
    ric_radial: float
    ric_spherical: float
    scalar: float


def curvature_terms(n, f, fp, fpp):
    """(radial Ricci, spherical Ricci, scalar) from f, f', f''; works on arrays."""
    f = np.asarray(f, dtype=float)
    ratio = np.asarray(fpp) / f
    tangential = (n - 2) * (1.0 - np.asarray(fp) ** 2) / f ** 2
    radial = -(n - 1) * ratio
    spherical = tangential - ratio
    scalar = radial + (n - 1) * spherical
    return radial, spherical, scalar


def curvature_at(profile: WarpProfile, t: float) -> Curvature:
    """Ricci and scalar curvature of the warped metric at an interior t."""
    d = profile.pole_window
    if not d <= t <= profile.a - d:
        raise PoleExclusionError(
            f"t={t!r} lies within the pole window {d!r} of an endpoint of [0, {profile.a!r}]")
    if profile.exact is not None:
        f, fp, fpp = (float(np.asarray(v)) for v in profile.exact(np.array(t)))
    else:
        fp_arr, fpp_arr = profile.derivatives()
        f = float(CubicSpline(profile.t, profile.f)(t))
        fp = float(CubicSpline(profile.t, fp_arr)(t))
        fpp = float(CubicSpline(profile.t, fpp_arr)(t))
    if f <= 0:
        raise DomainError(f"f(t) = {f!r} <= 0 at t = {t!r}")
    r, s, sc = curvature_terms(profile.n, f, fp, fpp)
    return Curvature(float(r), float(s), float(sc))


@dataclass(frozen=True)
class CurvatureReport:
    n: int
    eps: float
    margin1: float
    margin2: float
    margin3: float
    argmin1: float
    argmin2: float
    argmin3: float
    pole_exclusion: float
    grid_points: int
    a: float

    @property
    def margins(self) -> Tuple[float, float, float]:
        return (self.margin1, self.margin2, self.margin3)

    def admissible(self, tol: float = 0.0) -> bool:
        return min(self.margins) >= -tol


def constraint_residuals(profile: WarpProfile, eps: float):
    """Interior t grid and the three constraint residuals on it."""
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    fp, fpp = profile.derivatives()
    mask = profile.interior_mask()
    n = profile.n
    f = profile.f[mask]
    radial, spherical, scalar = curvature_terms(n, f, fp[mask], fpp[mask])
    r1 = radial / (n - 1) - eps
    r2 = spherical - (n - 1) * eps
    r3 = scalar / (n - 1) - n
    return profile.t[mask], r1, r2, r3


def constraint_report(profile: WarpProfile, eps: float) -> CurvatureReport:
    t, r1, r2, r3 = constraint_residuals(profile, eps)
    i1, i2, i3 = (int(np.argmin(r)) for r in (r1, r2, r3))
    return CurvatureReport(
        n=profile.n, eps=float(eps),
        margin1=float(r1[i1]), margin2=float(r2[i2]), margin3=float(r3[i3]),
        argmin1=float(t[i1]), argmin2=float(t[i2]), argmin3=float(t[i3]),
        pole_exclusion=profile.pole_window, grid_points=int(len(t)), a=profile.a)


# ----------------------------------------------------------------------------
# volume

def volume_integral(profile: WarpProfile, quad: Optional[QuadratureConfig] = None) -> float:
    """int_0^a f^(n-1) dt: adaptive for exact profiles, composite Simpson on samples."""
    p = profile.n - 1
    if profile.exact is not None:
        func = profile.exact

        def integrand(t):
            return float(np.asarray(func(np.array(t))[0])) ** p
        return integrate(integrand, 0.0, profile.a, quad, points=[0.5 * profile.a])
    return float(spi.simpson(profile.f ** p, x=profile.t))


def volume_ratio(profile: WarpProfile, quad: Optional[QuadratureConfig] = None) -> float:
    """vol(M) / vol(S^n)."""
    n = profile.n
    return sphere_volume(n - 1) * volume_integral(profile, quad) / sphere_volume(n)


# ----------------------------------------------------------------------------
# monotone quantities

def locate_equator(profile: WarpProfile) -> float:
    """First interior maximum r of f (where f' changes sign), refined by a parabola."""
    fp, _ = profile.derivatives()
    d = profile.pole_window
    t, f = profile.t, profile.f
    cand = np.nonzero((fp[:-1] > 0) & (fp[1:] <= 0) & (t[:-1] >= d) & (t[1:] <= t[-1] - d))[0]
    if len(cand) == 0:
        raise DegenerateProfileError("f has no interior maximum")
    i = int(cand[0])
    j = i if f[i] >= f[i + 1] else i + 1
    x0, x1, x2 = t[j - 1:j + 2]
    y0, y1, y2 = f[j - 1:j + 2]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a2 = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    a1 = (x2 ** 2 * (y0 - y1) + x1 ** 2 * (y2 - y0) + x0 ** 2 * (y1 - y2)) / denom
    if a2 >= 0:
        return float(x1)
    vertex = -a1 / (2 * a2)
    return float(min(max(vertex, x0), x2))


@dataclass(frozen=True)
class MonotoneReport:
    r: float
    t: np.ndarray
    scalar_quantity: np.ndarray  # P = f^(n-2) (1 - f'^2 - f^2), nondecreasing under (3)
    ricci_quantity: np.ndarray  # D = eps f^2 + f'^2, nonincreasing under (1)
    p_nondecreasing: bool
    d_nonincreasing: bool
    p_worst_drop: float
    d_worst_rise: float


def monotone_quantities(profile: WarpProfile, eps: float) -> MonotoneReport:
    """Sample P and D on [pole window, r] and check their monotonicity."""
    r = locate_equator(profile)
    fp, _ = profile.derivatives()
    mask = (profile.t >= profile.pole_window) & (profile.t <= r)
    t = profile.t[mask]
    f = profile.f[mask]
    g = fp[mask]
    P = f ** (profile.n - 2) * (1.0 - g ** 2 - f ** 2)
    D = eps * f ** 2 + g ** 2
    dP, dD = np.diff(P), np.diff(D)
    p_drop = float(max(0.0, -dP.min())) if len(dP) else 0.0
    d_rise = float(max(0.0, dD.max())) if len(dD) else 0.0
    p_ok = p_drop <= 1e-6 * (1.0 + float(np.max(np.abs(P))))
    d_ok = d_rise <= 1e-6 * (1.0 + float(np.max(np.abs(D))))
    return MonotoneReport(r=r, t=t, scalar_quantity=P, ricci_quantity=D,
                          p_nondecreasing=bool(p_ok), d_nonincreasing=bool(d_ok),
                          p_worst_drop=p_drop, d_worst_rise=d_rise)


@dataclass(frozen=True)
class ImplicationResult:
    holds: bool
    max_energy: float  # max of f^2 + f'^2 over the interior grid
    witness_t: float
    margin2: float


def implication_check(profile: WarpProfile, eps: float) -> ImplicationResult:
    """Check that (1) and (3) force f^2 + f'^2 <= 1 and hence (2)."""
    rep = constraint_report(profile, eps)
    if rep.margin1 < -IMPLICATION_TOL:
        raise PreconditionError(f"constraint (1) fails: margin {rep.margin1!r} at t={rep.argmin1!r}")
    if rep.margin3 < -IMPLICATION_TOL:
        raise PreconditionError(f"constraint (3) fails: margin {rep.margin3!r} at t={rep.argmin3!r}")
    fp, _ = profile.derivatives()
    mask = profile.interior_mask()
    energy = profile.f[mask] ** 2 + fp[mask] ** 2
    i = int(np.argmax(energy))
    worst = float(energy[i])
    holds = worst <= 1.0 + IMPLICATION_TOL and rep.margin2 >= -IMPLICATION_TOL
    return ImplicationResult(holds=holds, max_energy=worst,
                             witness_t=float(profile.t[mask][i]), margin2=rep.margin2)
