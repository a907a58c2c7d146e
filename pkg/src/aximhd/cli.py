"""Command-line front end: simulate / verify / apcheck.

Exit codes: 0 success, 1 configuration error, 2 blow-up abort,
3 verification or classification failure.
"""

import argparse
import json
import os
import sys
import time

from . import _kernels
from .apweight import ap_sweep, bounded_window, write_ap_csv
from .config import load_config, resolved_dict
from .diagnostics import (
    CheckReport,
    check_cz_ratio,
    check_curl_identity,
    check_energy_law,
    check_ineq2,
    check_ineq31,
    check_max_principle,
    check_pi_l2_monotone,
    omega_growth_ratio,
    write_records_csv,
)
from .errors import BlowUpError, ConfigError
from .evolve import RunConfig, run
from .grid import make_grid, write_field

CHECK_NAMES = (
    "energy-law",
    "max-principle",
    "pi-l2",
    "cz-ratio",
    "ineq31",
    "ineq2",
    "curl-identity",
)
_PAIR_CHECKS = ("cz-ratio", "ineq31", "ineq2")


def _apply_thread_cap():
    raw = os.environ.get("AXIMHD_THREADS", "").strip()
    if not raw:
        return
    try:
        cap = int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer AXIMHD_THREADS={raw!r}", file=sys.stderr)
        return
    if cap > 0 and _kernels.BACKEND == "numba":
        import numba

        numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))


def cmd_simulate(config_path):
    try:
        cfg, output = load_config(config_path)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1

    os.makedirs(output.dir, exist_ok=True)
    last_step = 0

    def writer(state, rec, nstep):
        nonlocal last_step
        last_step = nstep
        if output.snapshots:
            write_field(state.pi, os.path.join(output.dir, f"pi_{nstep}.axifield"))
            write_field(
                state.omega_red, os.path.join(output.dir, f"omega_{nstep}.axifield")
            )

    start = time.perf_counter()
    termination = "completed"
    code = 0
    try:
        state, records = run(cfg, on_record=writer)
        steps = last_step
        final_time = state.time
    except BlowUpError as err:
        print(f"blow-up abort: {err}", file=sys.stderr)
        termination = "blow-up"
        records = err.records
        steps = err.step
        final_time = err.time
        code = 2

    write_records_csv(records, os.path.join(output.dir, "diagnostics.csv"))
    meta = {
        "config": resolved_dict(cfg, output),
        "wall_time_s": time.perf_counter() - start,
        "termination": termination,
        "steps": steps,
        "final_time": final_time,
        "kernel_backend": _kernels.BACKEND,
    }
    with open(os.path.join(output.dir, "run_meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    return code


def _coarsened(cfg):
    """Half-resolution companion for refinement-pair checks."""
    g = cfg.grid
    if g.n_r % 2 or g.n_z % 2 or g.n_r // 2 < 8 or g.n_z // 2 < 8:
        raise ConfigError(
            "refinement-pair checks need even n_r, n_z with n/2 >= 8"
        )
    return RunConfig(
        grid=make_grid(g.n_r // 2, g.n_z // 2, g.r_max, g.z_len),
        mode=cfg.mode,
        t_end=cfg.t_end,
        cfl_adv=cfg.cfl_adv,
        cfl_diff=cfg.cfl_diff,
        dt_max=cfg.dt_max,
        pi_scheme=cfg.pi_scheme,
        omega_scheme=cfg.omega_scheme,
        output_every=max(1, cfg.output_every // 4),
        initial_name=cfg.initial_name,
        initial_params=dict(cfg.initial_params),
    )


def cmd_verify(config_path, checks):
    try:
        cfg, _output = load_config(config_path)
        for name in checks:
            if name not in CHECK_NAMES:
                raise ConfigError(f"unknown check {name!r} (have {list(CHECK_NAMES)})")
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1

    try:
        _state, records = run(cfg)
        records_coarse = None
        if any(name in _PAIR_CHECKS for name in checks):
            coarse_cfg = _coarsened(cfg)
            _cstate, records_coarse = run(coarse_cfg)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1
    except BlowUpError as err:
        print(f"blow-up abort: {err}", file=sys.stderr)
        return 2

    runners = {
        "energy-law": lambda: check_energy_law(records, cfg.grid, cfg.mode),
        "max-principle": lambda: check_max_principle(records),
        "pi-l2": lambda: check_pi_l2_monotone(records, cfg.grid, cfg.mode),
        "cz-ratio": lambda: check_cz_ratio(records_coarse, records),
        "ineq31": lambda: check_ineq31(records_coarse, records),
        "ineq2": lambda: check_ineq2(records_coarse, records, cfg.mode),
        "curl-identity": lambda: check_curl_identity(records, cfg.grid),
    }
    reports = []
    for name in checks:
        try:
            reports.append(runners[name]())
        except ValueError as err:
            reports.append(CheckReport(name, "FAIL", str(err), {}))

    width = max(len(r.name) for r in reports)
    for rep in reports:
        print(f"{rep.name:<{width}}  {rep.status:<7}  {rep.summary}")
    print(
        f"{'info':<{width}}  -        sup ||omega||_2/(1+sqrt(t)) = "
        f"{omega_growth_ratio(records):.6g}"
    )
    return 0 if all(r.status != "FAIL" for r in reports) else 3


def cmd_apcheck(p, alphas, samples=100_000, seed=0, out_dir="."):
    if p <= 1.0:
        print(f"config error: p must exceed 1, got {p}", file=sys.stderr)
        return 1
    os.makedirs(out_dir, exist_ok=True)
    reports = ap_sweep(p, alphas, mc_samples=samples, rng_seed=seed)
    write_ap_csv(reports, os.path.join(out_dir, "ap_report.csv"))

    lo, hi = bounded_window(p)
    ok = True
    for rep in reports:
        if abs(rep.alpha - lo) <= 1e-12 or abs(rep.alpha - hi) <= 1e-12:
            expected = "inconclusive"
        elif lo < rep.alpha < hi:
            expected = "bounded"
        else:
            expected = "unbounded"
        verdict = "ok"
        if rep.classification != expected and expected != "inconclusive":
            ok = False
            verdict = f"MISMATCH (expected {expected})"
        print(
            f"alpha={rep.alpha:g}: {rep.classification} [{rep.trigger}] "
            f"sup A = {rep.sup_estimate:.6g} {verdict}"
        )
    return 0 if ok else 3


def main(argv=None):
    _apply_thread_cap()
    parser = argparse.ArgumentParser(
        prog="aximhd",
        description="Axisymmetric swirl-magnetic MHD simulator and verifier",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a simulation from a JSON config")
    p_sim.add_argument("config")

    p_ver = sub.add_parser("verify", help="run checks against a simulation")
    p_ver.add_argument("config")
    p_ver.add_argument(
        "--checks",
        default=",".join(CHECK_NAMES),
        help=f"comma-separated subset of {','.join(CHECK_NAMES)}",
    )

    p_ap = sub.add_parser("apcheck", help="classify radial power weights")
    p_ap.add_argument("--p", type=float, required=True)
    p_ap.add_argument("--alpha", required=True, help="comma-separated exponents")
    p_ap.add_argument("--samples", type=int, default=100_000)
    p_ap.add_argument("--seed", type=int, default=0)
    p_ap.add_argument("--out", default=".")

    args = parser.parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args.config)
    if args.command == "verify":
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        return cmd_verify(args.config, checks)
    if args.command == "apcheck":
        try:
            alphas = [float(a) for a in args.alpha.split(",") if a.strip()]
        except ValueError:
            print(f"config error: bad --alpha list {args.alpha!r}", file=sys.stderr)
            return 1
        return cmd_apcheck(args.p, alphas, args.samples, args.seed, args.out)
    return 1


if __name__ == "__main__":
    sys.exit(main())
