"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also collected into the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from warpvol.bounds import BoundParams, H_of_m, bracket_expr, h_of_m
from warpvol.profile import (build_envelope_profile, envelope_volume, sine_football,
                             sine_football_ratio)
from warpvol.special import (inequality5_closed, inequality5_margin, inequality5_quad,
                             lemma1_sweep, odd_case_constant, sphere_volume, telescoping_sweep)
from warpvol.stability import stability_coefficients
from warpvol.threshold import REFERENCE_EPS0_INTERVAL, epsilon_from_hprime
from warpvol.warped import (constraint_report, finite_difference_derivatives, sphere_profile,
                            volume_ratio)


def report(number, ok, detail, seconds, budget):
    within = seconds < budget
    line = (f"criterion {number}: {'PASS' if ok and within else 'FAIL'}  {detail}  "
            f"[{seconds:.2f}s, budget {budget:g}s]")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
    assert within, line


def test_criterion_01_round_sphere():
    start = time.perf_counter()
    worst_vol, worst_exact, worst_sampled = 0.0, 0.0, 0.0
    for n in range(3, 9):
        exact = sphere_profile(n, grid=10 ** 4)
        sampled = sphere_profile(n, grid=10 ** 4, sampled=True)
        worst_vol = max(worst_vol, abs(volume_ratio(exact) - 1), abs(volume_ratio(sampled) - 1))
        worst_exact = max(worst_exact, max(map(abs, constraint_report(exact, 1.0).margins)))
        worst_sampled = max(worst_sampled, max(map(abs, constraint_report(sampled, 1.0).margins)))
    ok = worst_vol <= 1e-8 and worst_exact <= 1e-6 and worst_sampled <= 1e-6
    report(1, ok, f"|ratio-1| <= {worst_vol:.1e}, |margins| <= {worst_exact:.1e} exact, "
                  f"{worst_sampled:.1e} sampled", time.perf_counter() - start, 5)


def test_criterion_02_inequality_margin():
    start = time.perf_counter()
    margins = [inequality5_margin(n) for n in range(3, 61)]
    gap = max(abs(inequality5_closed(n) - inequality5_quad(n)) for n in range(3, 61))
    dev = max(abs(m - 1) for m in margins)
    ok = min(margins) > 0 and gap <= 1e-8 and dev <= 1e-8
    report(2, ok, f"min margin {min(margins):.12f}, closed/quad gap {gap:.1e}, |margin-1| <= {dev:.1e}",
           time.perf_counter() - start, 5)


def test_criterion_03_lemma_sweep():
    start = time.perf_counter()
    s = lemma1_sweep()
    lhs = np.array([p.lhs for p in s.points])
    margins = np.array([p.margin for p in s.points])
    xs = np.array([p.x for p in s.points])
    ok = (len(s.points) >= 150 and xs[0] == 0.5 and xs[-1] == 200.0 and bool(np.all(margins > 0))
          and bool(np.all(np.diff(lhs) >= 0)))
    report(3, ok, f"{len(s.points)} points, min margin {margins.min():.3e} at x={xs[margins.argmin()]:g}",
           time.perf_counter() - start, 1)


def test_criterion_04_odd_case_constant():
    start = time.perf_counter()
    c = odd_case_constant()
    ok = abs(c - 0.685) <= 1e-3 and c <= math.sqrt(2)
    report(4, ok, f"constant {c:.7f}", time.perf_counter() - start, 1)


def test_criterion_05_threshold(envelope3, envelope3_doubled, timings):
    r, d = envelope3, envelope3_doubled
    moved = max(abs(r.eps_lo - d.eps_lo), abs(r.eps_hi - d.eps_hi))
    inside, meets = r.reference_comparison()
    lo, hi = REFERENCE_EPS0_INTERVAL
    ok = (r.found and r.width <= 1e-3 and 0.12 <= r.eps_lo and r.eps_hi <= 0.15 and moved <= 1e-3)
    detail = (f"bracket [{r.eps_lo:.7f}, {r.eps_hi:.7f}] width {r.width:.1e}, doubled grids move it "
              f"{moved:.1e}; reference ({lo}, {hi}): {'inside' if inside else 'not inside'}, "
              f"{'intersects' if meets else 'does not intersect'}")
    report(5, ok, detail, timings["envelope3"] + timings["envelope3_doubled"], 300)


def test_criterion_06_consistency_chain():
    start = time.perf_counter()
    n, eps = 4, 0.95
    worst, sandwiched = -np.inf, True
    for m in np.linspace(eps ** (1 / 6), 1.0, 64):
        p = BoundParams(n, eps, float(m))
        res = H_of_m(p)
        bound = 2 * sphere_volume(n - 1) * res.H
        worst = max(worst, envelope_volume(p).volume / bound)
        sandwiched &= res.in_sandwich
    ok = worst <= 1 + 1e-6 and sandwiched
    report(6, ok, f"max envelope/(2 w_3 H) = {worst:.12f}, sandwich holds: {sandwiched}",
           time.perf_counter() - start, 60)


def test_criterion_07_h_closed_form():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    root_err, bracket_err = 0.0, 0.0
    for _ in range(20):
        eps = rng.uniform(0.05, 0.95)
        # admissible: bracket(1) = 1 - (1-m^2)/m^2 > eps
        m = rng.uniform(math.sqrt(1 / (2 - eps)) + 1e-6, 1.0 - 1e-9)
        p = BoundParams(4, eps, m)
        h = h_of_m(p)
        root_err = max(root_err, abs(h - math.sqrt((1 - m * m) / (1 - eps)) / m))
        bracket_err = max(bracket_err, abs(bracket_expr(h, p) - eps))
    ok = root_err <= 1e-9 and bracket_err <= 1e-10
    report(7, ok, f"|h - closed form| <= {root_err:.1e}, |bracket(h) - eps| <= {bracket_err:.1e}",
           time.perf_counter() - start, 1)


def test_criterion_08_hprime_closed_forms():
    start = time.perf_counter()
    e4 = abs(epsilon_from_hprime(4) - 2 ** (-6 / 11))
    e3 = abs(epsilon_from_hprime(3) - math.sqrt((math.pi - 2) / math.pi))
    report(8, e4 <= 1e-9 and e3 <= 1e-9, f"errors {e4:.1e} (n=4), {e3:.1e} (n=3)",
           time.perf_counter() - start, 1)


def test_criterion_09_branch_saturation():
    start = time.perf_counter()
    env = build_envelope_profile(BoundParams(4, 0.9, 0.99))
    prof = env.assembled
    f, t = prof.f, prof.t
    P_ref, D_ref = 0.99 ** 2 * (1 - 0.99 ** 2), 0.9 * 0.9801

    def spreads(fp, mask):
        P = f ** 2 * (1 - fp ** 2 - f ** 2)
        D = 0.9 * f ** 2 + fp ** 2
        s, r = env.scalar_branch_mask & mask, env.ricci_branch_mask & mask
        return float(np.max(np.abs(P[s] - P_ref))), float(np.max(np.abs(D[r] - D_ref)))

    fp_exact, _ = prof.derivatives()
    p_exact, d_exact = spreads(fp_exact, np.ones_like(f, dtype=bool))
    # finite differences of the samples, away from the switch kink and the poles
    fp_fd, _ = finite_difference_derivatives(t, f)
    away = np.abs(np.abs(t - env.r) - (env.r - env.switch_t)) > 3 * np.max(np.diff(t))
    p_fd, d_fd = spreads(fp_fd, prof.interior_mask() & away)
    ok = max(p_exact, d_exact, p_fd, d_fd) <= 1e-6 and abs(P_ref - 0.019504) < 5e-7
    report(9, ok, f"P-{P_ref:.6f}: {p_exact:.1e} exact / {p_fd:.1e} differenced; "
                  f"D-{D_ref:.5f}: {d_exact:.1e} / {d_fd:.1e}", time.perf_counter() - start, 10)


def test_criterion_10_sine_football():
    start = time.perf_counter()
    worst_margin, worst_ratio = np.inf, 0.0
    for n in (3, 4, 5):
        for eps in np.linspace(0.05, 0.95, 12)[1:-1]:
            prof = sine_football(n, float(eps))
            worst_margin = min(worst_margin, min(constraint_report(prof, float(eps)).margins))
            worst_ratio = max(worst_ratio, abs(volume_ratio(prof) - sine_football_ratio(n, float(eps))))
    ok = worst_margin >= -1e-8 and worst_ratio <= 1e-8
    report(10, ok, f"min margin {worst_margin:.2e}, |ratio - A^(n-1)/sqrt(eps)| <= {worst_ratio:.1e}",
           time.perf_counter() - start, 30)


def test_criterion_11_stability():
    start = time.perf_counter()
    rng = np.random.default_rng(11)
    worst, bound = 0.0, True
    for n, d in zip(rng.integers(3, 21, 10 ** 4), rng.uniform(-1.0, 1.0, 10 ** 4)):
        c = stability_coefficients(int(n), float(d))
        worst = max(worst, c.identity_residual, c.eps3_residual)
        bound &= c.bound_holds
    report(11, worst <= 1e-12 and bound, f"max relative residual {worst:.1e}, bound holds: {bound}",
           time.perf_counter() - start, 1)


def test_criterion_12_telescoping():
    start = time.perf_counter()
    s = telescoping_sweep(10 ** 6)
    ok = s.even_min_margin >= 0 and s.odd_min_margin >= 0
    report(12, ok, f"min margins {s.even_min_margin:.4f} (even), {s.odd_min_margin:.5f} (odd)",
           time.perf_counter() - start, 5)
