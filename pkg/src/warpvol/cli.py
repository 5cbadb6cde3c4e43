"""Command-line front end.

Every command prints a JSON report on stdout and a short human summary on
stderr.  Exit status: 0 when the command's verdict holds, 1 when it does
not, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bounds import (BoundParams, H_of_m, bracket_limit, hprime_lower_bound,
                     sandwich_bounds, small_m_shortcut)
from .errors import DegenerateProfileError, WarpVolError
from .profile import (build_envelope_profile, envelope_volume, sine_football,
                      sine_football_amplitude, sine_football_ratio)
from .profile_io import read_profile_csv, write_profile_csv
from .quadrature import QuadratureConfig
from .report import Report
from .special import (inequality5_closed, inequality5_quad, lemma1_sweep, odd_case_constant,
                      q_integral, q_integral_quad, telescoping_sweep, wallis_W, wallis_W_quad)
from .stability import stability_coefficients
from .threshold import (DEFAULT_BISECT_TOL, DEFAULT_GOLDEN_TOL, DEFAULT_M_GRID,
                        REFERENCE_EPS0_INTERVAL, SearchSettings, certify_theorem, find_threshold)
from .warped import constraint_report, monotone_quantities, volume_ratio

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2
STABILITY_TOL = 1e-12
INEQ5_TOL = 1e-8


def _quad(args) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=args.quad_tol)


def _settings(args) -> SearchSettings:
    return SearchSettings(m_grid=args.grid, bisect_tol=args.bisect_tol,
                          golden_tol=args.golden_tol, quad=_quad(args))


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# ----------------------------------------------------------------------------
# commands

def cmd_verify(args, rep: Report) -> bool:
    quad = _quad(args)
    sweep = lemma1_sweep(args.x_max)
    rep.add(lemma1_points=len(sweep.points), lemma1_min_margin=sweep.min_margin,
            lemma1_argmin_x=sweep.argmin_x, lemma1_lhs_nondecreasing=sweep.lhs_nondecreasing)

    margins, gaps, w_gap, q_gap = [], [], 0.0, 0.0
    for n in range(3, args.n_max + 1):
        closed = inequality5_closed(n)
        margins.append(closed)
        gaps.append(abs(closed - inequality5_quad(n, quad)))
        w_gap = max(w_gap, abs(wallis_W(n) - wallis_W_quad(n, quad)))
        q_gap = max(q_gap, abs(q_integral(n) - q_integral_quad(n, quad)))
    dev = max(abs(m - 1.0) for m in margins)
    rep.add(ineq5_n_min=3, ineq5_n_max=args.n_max, ineq5_min_margin=min(margins),
            ineq5_max_margin=max(margins), ineq5_max_dev_from_one=dev,
            ineq5_max_closed_quad_gap=max(gaps), wallis_max_closed_quad_gap=w_gap,
            q_max_closed_quad_gap=q_gap)
    if dev > INEQ5_TOL:
        rep.warnings.append(f"inequality margin deviates from 1 by {dev:.3g}")

    tele = telescoping_sweep(args.k_max)
    c = odd_case_constant()
    rep.add(telescoping_k_max=args.k_max, telescoping_even_min_margin=tele.even_min_margin,
            telescoping_even_argmin=tele.even_argmin, telescoping_odd_min_margin=tele.odd_min_margin,
            telescoping_odd_argmin=tele.odd_argmin, odd_case_constant=c,
            odd_case_constant_margin=math.sqrt(2.0) - c)
    ok = (sweep.holds and min(margins) > 0 and max(gaps) <= INEQ5_TOL and w_gap <= INEQ5_TOL
          and q_gap <= INEQ5_TOL and tele.holds and c <= math.sqrt(2.0))
    rep.add(verdict=ok)
    _say(f"gamma-ratio sweep: min margin {sweep.min_margin:.3e} over {len(sweep.points)} points")
    _say(f"inequality (n=3..{args.n_max}): margins in [{min(margins):.12f}, {max(margins):.12f}]")
    _say(f"telescoping (k<={args.k_max}): min margins {tele.even_min_margin:.4g}, {tele.odd_min_margin:.4g}")
    _say(f"odd-case constant {c:.6f} <= sqrt(2): {c <= math.sqrt(2.0)}")
    return ok


def cmd_bound(args, rep: Report) -> bool:
    params = BoundParams(args.n, args.eps, args.m)
    lo, hi = sandwich_bounds(params)
    rep.add(bracket_at_1=bracket_limit(params), sandwich_lo=lo, sandwich_hi=hi,
            shortcut_applies=small_m_shortcut(params), W=wallis_W(args.n),
            G=hprime_lower_bound(args.n, args.eps))
    res = H_of_m(params, _quad(args))
    rep.add(h=res.h, H=res.H, in_sandwich=res.in_sandwich,
            H_le_W=res.H <= wallis_W(args.n) * (1 + 1e-9), verdict=res.in_sandwich)
    _say(f"h(m) = {res.h:.12g}, H(m) = {res.H:.12g} in [{lo:.12g}, {hi:.12g}]")
    return res.in_sandwich


def cmd_profile(args, rep: Report) -> bool:
    if args.kind == "envelope":
        if args.m is None:
            raise WarpVolError("--m is required for the envelope profile")
        params = BoundParams(args.n, args.eps, args.m)
        env = build_envelope_profile(params, args.grid or 1024, _quad(args))
        prof = env.assembled
        ev = envelope_volume(params, _quad(args))
        rep.add(a=prof.a, r=env.r, switch_s=env.switch_s, switch_t=env.switch_t,
                envelope_volume_ratio=ev.ratio, sampled_volume_ratio=volume_ratio(prof))
        meta = {"kind": "envelope", "n": args.n, "eps": args.eps, "m": args.m}
        ok = True
    else:
        prof = sine_football(args.n, args.eps, args.grid or 2001)
        rep_c = constraint_report(prof, args.eps)
        rep.add(a=prof.a, amplitude=sine_football_amplitude(args.n, args.eps),
                volume_ratio=volume_ratio(prof), closed_form_ratio=sine_football_ratio(args.n, args.eps),
                margin1=rep_c.margin1, margin2=rep_c.margin2, margin3=rep_c.margin3)
        meta = {"kind": "sine", "n": args.n, "eps": args.eps}
        ok = rep_c.admissible(1e-8)
    meta["grid"] = len(prof.t)
    write_profile_csv(prof, args.out, meta)
    rep.add(rows=len(prof.t), out=str(args.out), verdict=ok)
    _say(f"wrote {len(prof.t)} samples to {args.out}")
    return ok


def cmd_curvature(args, rep: Report) -> bool:
    prof = read_profile_csv(args.profile, args.n)
    cr = constraint_report(prof, args.eps)
    rep.add(n=prof.n, rows=len(prof.t), margin1=cr.margin1, margin2=cr.margin2, margin3=cr.margin3,
            argmin1=cr.argmin1, argmin2=cr.argmin2, argmin3=cr.argmin3,
            pole_exclusion=cr.pole_exclusion, grid_points=cr.grid_points,
            volume_ratio=volume_ratio(prof))
    try:
        mq = monotone_quantities(prof, args.eps)
        rep.add(equator=mq.r, p_nondecreasing=mq.p_nondecreasing, d_nonincreasing=mq.d_nonincreasing)
    except DegenerateProfileError as exc:
        rep.warnings.append(str(exc))
    ok = cr.admissible(args.tol)
    rep.add(admissible=ok, verdict=ok)
    _say(f"margins: {cr.margin1:.3e}, {cr.margin2:.3e}, {cr.margin3:.3e} "
         f"({'admissible' if ok else 'not admissible'} at tol {args.tol:g})")
    return ok


def cmd_threshold(args, rep: Report) -> bool:
    kind = "H_comparison" if args.kind == "H" else args.kind
    res = find_threshold(args.n, kind, _settings(args))
    rep.add(kind=kind, eps_lo=res.eps_lo, eps_hi=res.eps_hi, width=res.width,
            midpoint=res.midpoint, inner_max_m=res.inner_max_m, found=res.found,
            evaluations=len(res.refinement_trace))
    if res.note:
        rep.warnings.append(res.note)
    if kind != "hprime" and args.n == 3:
        inside, meets = res.reference_comparison()
        rep.add(reference_lo=REFERENCE_EPS0_INTERVAL[0], reference_hi=REFERENCE_EPS0_INTERVAL[1],
                inside_reference_interval=inside, intersects_reference_interval=meets)
        _say(f"reference interval ({REFERENCE_EPS0_INTERVAL[0]}, {REFERENCE_EPS0_INTERVAL[1]}): "
             f"{'intersects' if meets else 'does not intersect'}")
    if args.trace_csv:
        with open(args.trace_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["eps", "sup_value"])
            w.writerows((repr(e), repr(v)) for e, v in res.refinement_trace)
    rep.add(verdict=res.found)
    _say(f"{kind} threshold for n={args.n}: [{res.eps_lo:.8f}, {res.eps_hi:.8f}]")
    return res.found


def cmd_certify(args, rep: Report) -> bool:
    cert = certify_theorem(args.n, args.eps, _settings(args))
    rep.add(shortcut_m_max=cert.shortcut_m_max, sweep_sup=cert.sweep_sup,
            sweep_margin=cert.sweep_margin, worst_m=cert.worst_m,
            fallback_count=len(cert.fallback_m), G=cert.hprime_G,
            inequality_margin=cert.inequality_margin, verdict=cert.verdict)
    rep.warnings.extend(cert.failures)
    _say(f"n={args.n}, eps={args.eps}: {cert.verdict}")
    return cert.certified


def cmd_stability(args, rep: Report) -> bool:
    c = stability_coefficients(args.n, args.delta)
    ok = c.identity_residual <= STABILITY_TOL and c.eps3_residual <= STABILITY_TOL and c.bound_holds
    rep.add(k=c.k, eps3=c.eps3, identity_residual=c.identity_residual,
            eps3_residual=c.eps3_residual, eps3_bound=(args.n + 1) * abs(args.delta),
            bound_holds=c.bound_holds, verdict=ok)
    _say(f"k = {c.k:.12g}, eps3 = {c.eps3:.12g}, |eps3| <= (n+1)|delta|: {c.bound_holds}")
    return ok


# ----------------------------------------------------------------------------
# parser

def _add_quad(p):
    p.add_argument("--quad-tol", type=float, default=1e-10, help="absolute quadrature tolerance")


def _add_search(p):
    _add_quad(p)
    p.add_argument("--grid", type=int, default=DEFAULT_M_GRID, help="coarse m-grid size")
    p.add_argument("--bisect-tol", type=float, default=DEFAULT_BISECT_TOL)
    p.add_argument("--golden-tol", type=float, default=DEFAULT_GOLDEN_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="warpvol", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Gamma-function inequality suites")
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--x-max", type=float, default=200.0)
    p.add_argument("--k-max", type=int, default=10 ** 6)
    _add_quad(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="h(m), H(m) and the sandwich bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    _add_quad(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("profile", help="build a football profile and write it as CSV")
    p.add_argument("--kind", choices=("envelope", "sine"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--m", type=float)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    _add_quad(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("curvature", help="constraint margins of a CSV profile")
    p.add_argument("--profile", type=Path, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-6, help="admissibility slack on the margins")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("threshold", help="critical eps search")
    p.add_argument("--kind", choices=("envelope", "H", "H_comparison", "hprime"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trace-csv", type=Path, default=None)
    _add_search(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("certify", help="volume certificate for (n, eps)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    _add_search(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("stability", help="rigidity coefficient identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_stability)
    return parser


def _inputs(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "command"):
            continue
        out[k] = str(v) if isinstance(v, Path) else v
    return out


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(command=args.command, inputs=_inputs(args))
    try:
        ok = args.func(args, rep)
        code = EXIT_OK if ok else EXIT_FALSE
    except (WarpVolError, ValueError, OSError) as exc:
        rep.outputs["error"] = f"{type(exc).__name__}: {exc}"
        _say(f"error: {exc}")
        code = EXIT_ERROR
    print(rep.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
