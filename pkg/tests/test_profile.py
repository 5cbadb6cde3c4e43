import math

import numpy as np
import pytest
from scipy.integrate import simpson

from warpvol.bounds import BoundParams, H_of_m
from warpvol.errors import DomainError
from warpvol.profile import (branch_switch, build_envelope_profile, envelope_volume, sine_football,
                             sine_football_amplitude, sine_football_ratio)
from warpvol.special import sphere_volume
from warpvol.threshold import envelope_supremum
from warpvol.warped import (constraint_report, finite_difference_derivatives, implication_check,
                            volume_ratio)


@pytest.fixture(scope="module")
def env4():
    return build_envelope_profile(BoundParams(4, 0.9, 0.99), grid_size=1024)


def test_envelope_recovers_sphere():
    env = build_envelope_profile(BoundParams(3, 1.0, 1.0), grid_size=512)
    prof = env.assembled
    assert env.r == pytest.approx(math.pi / 2, abs=1e-9)
    assert np.max(np.abs(prof.f - np.sin(prof.t))) <= 1e-6
    assert env.switch_s is None


def test_envelope_profile_shape(env4):
    t, f = env4.assembled.t, env4.assembled.f
    assert np.all(np.diff(env4.t_of_f) > 0)
    assert env4.assembled.a == pytest.approx(2 * env4.r, abs=1e-12)
    # symmetric about r
    np.testing.assert_allclose(f, f[::-1], atol=1e-12)
    np.testing.assert_allclose(t + t[::-1], 2 * env4.r, atol=1e-9)
    assert env4.switch_s == pytest.approx(math.sqrt(0.0199 / 0.1) / 0.99, abs=1e-12)
    assert 0 < env4.switch_t < env4.r


def test_envelope_pole_slope(env4):
    # t(f) ~ f / (sqrt(eps) m) near the pole
    p = env4.params
    slope = env4.t_of_f[1] / env4.f_grid[1]
    assert slope == pytest.approx(1 / (math.sqrt(p.eps) * p.m), rel=1e-4)


def test_branch_saturation_exact(env4):
    prof = env4.assembled
    fp, _ = prof.derivatives()
    f = prof.f
    P = f ** 2 * (1 - fp ** 2 - f ** 2)
    D = 0.9 * f ** 2 + fp ** 2
    s_mask, r_mask = env4.scalar_branch_mask, env4.ricci_branch_mask
    assert s_mask.sum() > 100 and r_mask.sum() > 100
    np.testing.assert_allclose(P[s_mask], 0.99 ** 2 * (1 - 0.99 ** 2), atol=1e-12)
    np.testing.assert_allclose(D[r_mask], 0.9 * 0.9801, atol=1e-12)


def test_branch_saturation_finite_difference(env4):
    # independent of the stored derivatives: differentiate the sampled (t, f)
    prof = env4.assembled
    fp, _ = finite_difference_derivatives(prof.t, prof.f)
    f, t = prof.f, prof.t
    away = np.abs(np.abs(t - env4.r) - (env4.r - env4.switch_t)) > 3 * np.max(np.diff(t))
    inner = prof.interior_mask() & away
    P = f ** 2 * (1 - fp ** 2 - f ** 2)
    D = 0.9 * f ** 2 + fp ** 2
    assert np.max(np.abs(P[env4.scalar_branch_mask & inner] - 0.019504)) < 1e-6
    assert np.max(np.abs(D[env4.ricci_branch_mask & inner] - 0.88209)) < 1e-6


def test_envelope_not_required_admissible(env4):
    rep = constraint_report(env4.assembled, 0.9)
    assert rep.margin1 < 0  # reported, not enforced


def test_shortcut_regime_construction():
    p = BoundParams(3, 0.9, 0.3)
    env = build_envelope_profile(p, grid_size=256)
    assert env.r > 0 and env.assembled.f.max() == pytest.approx(0.3)
    assert env.switch_s is None  # Ricci branch throughout
    assert env.ricci_branch_mask.all()


def test_build_domain():
    with pytest.raises(DomainError):
        build_envelope_profile(BoundParams(4, 0.9, 0.99), grid_size=100)


def test_envelope_volume_sphere():
    v = envelope_volume(BoundParams(3, 1.0, 1.0))
    assert v.volume == pytest.approx(2 * math.pi ** 2, rel=1e-12)
    assert v.ratio == pytest.approx(1.0, abs=1e-12)


def test_envelope_volume_vs_H():
    p = BoundParams(4, 0.9, 0.99)
    v = envelope_volume(p)
    bound = 2 * sphere_volume(3) * H_of_m(p).H / sphere_volume(4)
    assert v.ratio <= bound * (1 + 1e-9)


def test_envelope_volume_vs_simpson(env4):
    p = env4.params
    v = envelope_volume(p)
    half = simpson(env4.f_grid ** 3, x=env4.t_of_f)
    assert 2 * half == pytest.approx(2 * v.half_integral, abs=1e-6)
    assert volume_ratio(env4.assembled) == pytest.approx(v.ratio, abs=1e-6)


def test_envelope_grid_convergence():
    p = BoundParams(4, 0.9, 0.99)
    a = build_envelope_profile(p, grid_size=256)
    b = build_envelope_profile(p, grid_size=1024)
    assert abs(volume_ratio(a.assembled) - volume_ratio(b.assembled)) <= 1e-6


def test_envelope_ratio_exceeds_one_for_small_eps():
    sup = envelope_supremum(3, 0.05)
    assert sup.value > 1.0
    assert envelope_volume(BoundParams(3, 0.05, sup.m)).ratio > 1.0


def test_branch_switch_none_at_m_one():
    assert branch_switch(BoundParams(5, 0.5, 1.0)) is None


# ---------------------------------------------------------------- sine football

def test_sine_football_examples():
    assert sine_football_amplitude(3, 0.5) == pytest.approx(1 / math.sqrt(3), abs=1e-15)
    prof = sine_football(3, 0.5)
    assert prof.a == pytest.approx(math.pi * math.sqrt(2), abs=1e-14)
    assert sine_football_ratio(3, 0.5) == pytest.approx(0.4714045207910316, abs=1e-14)
    assert sine_football_ratio(4, 0.5) == pytest.approx(0.3577708763999664, abs=1e-14)
    assert sine_football_ratio(3, 1 - 1e-12) == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sine_football_admissible(n):
    for eps in np.linspace(0.05, 0.95, 10)[1:-1]:
        prof = sine_football(n, float(eps))
        assert min(constraint_report(prof, float(eps)).margins) >= -1e-8
        assert implication_check(prof, float(eps)).holds
        assert volume_ratio(prof) == pytest.approx(sine_football_ratio(n, float(eps)), abs=1e-8)


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.2])
def test_sine_football_domain(eps):
    with pytest.raises(DomainError):
        sine_football(3, eps)
