"""Volume comparison numerics for axisymmetric warped-product metrics."""

from .bounds import BoundParams, BoundResult, H_of_m, envelope, h_of_m, hprime_lower_bound
from .profile import build_envelope_profile, envelope_volume, sine_football
from .quadrature import QuadratureConfig
from .special import (inequality5_margin, lemma1_margin, log_gamma, q_integral,
                      sphere_volume, telescoping_check, wallis_W)
from .stability import stability_coefficients
from .threshold import (certify_theorem, epsilon_from_hprime, epsilon_star_envelope,
                        epsilon_star_H)
from .warped import WarpProfile, constraint_report, curvature_at, volume_ratio

__version__ = "0.1.0"
