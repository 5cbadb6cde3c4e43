"""Scalar coefficient algebra behind the near-sphere rigidity argument.

With delta the mean trace of the perturbation, the volume multiplier

    k = (8(n-1) - 4 delta) / (4 + delta)

is the one satisfying k/2 - (n-1) = -delta (1/2 + k/8).  Writing
k = 2(n-1) - eps3 gives eps3 = 2(n+1) delta / (4 + delta), which is bounded
by (n+1)|delta| whenever delta > -2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class StabilityCoefficients:
    n: int
    delta: float
    k: float
    eps3: float
    identity_residual: float  # residual of k/2 - (n-1) = -delta (1/2 + k/8), relative to |k| + 2(n-1)
    eps3_residual: float  # same scaling, for eps3 = 2(n+1) delta / (4 + delta)
    bound_holds: bool  # |eps3| <= (n+1)|delta|


def _rel(a: float, b: float, scale: float) -> float:
    # both sides are differences of O(n) terms, so measure against those terms
    return abs(a - b) / scale


def stability_coefficients(n: int, delta: float) -> StabilityCoefficients:
    if int(n) != n or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    if not delta > -2.0:
        raise DomainError(f"delta must exceed -2, got {delta!r}")
    k = (8.0 * (n - 1) - 4.0 * delta) / (4.0 + delta)
    eps3 = 2.0 * (n - 1) - k
    lhs = k / 2.0 - (n - 1)
    rhs = -delta * (0.5 + k / 8.0)
    closed = 2.0 * (n + 1) * delta / (4.0 + delta)
    scale = abs(k) + 2.0 * (n - 1)
    return StabilityCoefficients(n=int(n), delta=float(delta), k=k, eps3=eps3,
                                 identity_residual=_rel(lhs, rhs, scale),
                                 eps3_residual=_rel(eps3, closed, scale),
                                 bound_holds=abs(eps3) <= (n + 1) * abs(delta))
