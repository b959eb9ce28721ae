# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

magtm Command Line Interface

Table-emitting sweeps and kernel certifications. Exit codes: 0 success,
1 contract violation, 2 usage error.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from magtm.config import Config
from magtm.config_validator import USAGE_EXIT_CODE, ConfigValidator
from magtm.core import MagtmError, ParameterError, log, setup_logging
from magtm.greens import CertifyParams, KernelId, certify_kernel
from magtm.heatkernels import TaParams, default_eps, heat_s1_poisson, heat_s1_spectral, ta_difference
from magtm.performance import perf_monitor, timer
from magtm.rearrange import oneil_suite
from magtm.serializers import certificate_to_dict, format_table, write_certificate, write_table
from magtm.sharpness import (
    DEFAULT_DELTAS,
    DEFAULT_PS,
    FOUR_PI,
    TM_LOG_DELTAS,
    HardySobolevParams,
    extremal_field,
    extremal_rayleigh_quotient,
    hardy_sobolev_quotient,
    limit_scan,
    mu_p_closed,
    threshold_scan,
    tm_blowup_scan,
)

try:
    from colorama import Fore, Style, init

    init(autoreset=True)
    HAS_COLOR = True
except ImportError:
    HAS_COLOR = False

    # Fallback if colorama not installed
    class Fore:
        GREEN = RED = YELLOW = CYAN = ""

    class Style:
        BRIGHT = RESET_ALL = ""


__version__ = Config.APP_VERSION

DEFAULT_TS = (0.01, 0.1, 1.0, 10.0)
DEFAULT_KERNELS = ("phi1", "phi2", "phi4")
HEAT_ANGLES = 64
HEAT_TOL = 1e-12
GAP_4PI_TOL = 1e-3
MU_TOL = 1e-5
ONEIL_TOL = -1e-12

# (a, p, lambda) inside the closed-form regime
MU_CHECK_POINT = (0.25, 3.0, 0.4)


def print_success(message):
    """Print success message"""
    if HAS_COLOR:
        print(f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}", file=sys.stderr)
    else:
        print(f"✓ {message}", file=sys.stderr)


def print_error(message):
    """Print error message"""
    if HAS_COLOR:
        print(f"{Fore.RED}✗ {message}{Style.RESET_ALL}", file=sys.stderr)
    else:
        print(f"✗ {message}", file=sys.stderr)


def print_info(message):
    """Print info message"""
    if HAS_COLOR:
        print(f"{Fore.CYAN}ℹ {message}{Style.RESET_ALL}", file=sys.stderr)
    else:
        print(f"ℹ {message}", file=sys.stderr)


def print_warning(message):
    """Print warning message"""
    if HAS_COLOR:
        print(f"{Fore.YELLOW}⚠ {message}{Style.RESET_ALL}", file=sys.stderr)
    else:
        print(f"⚠ {message}", file=sys.stderr)


class UsageError(ParameterError):
    """Bad command-line input; maps to exit code 2."""


def _float_list(text: str):
    """Comma-separated floats; an empty string gives an empty list."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    try:
        return [float(item) for item in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _name_list(text: str):
    return [item.strip().lower() for item in text.split(",") if item.strip()]


# ============================================================================
# Run configuration
# ============================================================================


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: Optional[Path] = None
    fmt: str = "csv"
    seed: int = Config.SEED

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        a = args.a
        lam = args.lam
        if not 0.0 <= a <= 0.5:
            raise UsageError(f"--a must lie in [0, 1/2], got {a}")
        if not lam > 0 or not math.isfinite(lam):
            raise UsageError(f"--lambda must be positive, got {lam}")
        eps = args.eps if args.eps is not None else default_eps(a, lam)
        if not eps > 0:
            raise UsageError(f"--eps must be positive, got {eps}")
        if args.tol is not None and not args.tol > 0:
            raise UsageError(f"--tol must be positive, got {args.tol}")
        if args.cap is not None and not args.cap > 0:
            raise UsageError(f"--cap must be positive, got {args.cap}")
        if not args.beta > 0 or not math.isfinite(args.beta):
            raise UsageError(f"--beta must be positive, got {args.beta}")

        params = {
            "a": a,
            "lambda": lam,
            "eps": eps,
            "beta": args.beta,
            "tol": args.tol,
            "cap": args.cap,
            "t_list": args.t_list,
            "p_list": args.p_list,
            "delta_list": args.delta_list,
            "kernels": args.kernels,
        }
        out = Path(args.out) if args.out else None
        return cls(command=args.command, params=params, out=out, fmt=args.format, seed=args.seed)

    def meta(self, **extra) -> dict:
        meta = {"command": self.command, "seed": self.seed, "a": self.params["a"],
                "lambda": self.params["lambda"]}
        meta.update(extra)
        return meta


def _emit(cfg: RunConfig, name: str, rows: list, **meta):
    """Write a table under --out, or print it to stdout."""
    meta = cfg.meta(table=name, **meta)
    if cfg.out is None:
        sys.stdout.write(format_table(rows, cfg.fmt, meta))
        return None
    path = write_table(cfg.out / f"{name}.{cfg.fmt}", rows, cfg.fmt, meta)
    print_info(f"Wrote {path}")
    return path


# ============================================================================
# Commands
# ============================================================================


def cmd_heat_check(args):
    """Dual representation of the circle heat kernel and the T_a comparison sweep"""
    cfg = RunConfig.from_args(args)
    ts = cfg.params["t_list"] if cfg.params["t_list"] is not None else list(DEFAULT_TS)
    if not ts:
        print_error("--t-list is empty")
        return USAGE_EXIT_CODE
    if any(not t > 0 for t in ts):
        print_error("--t-list entries must be positive")
        return USAGE_EXIT_CODE
    tol = cfg.params["tol"] if cfg.params["tol"] is not None else HEAT_TOL

    ta = TaParams(cfg.params["a"], cfg.params["eps"])
    thetas = np.linspace(-math.pi, math.pi, HEAT_ANGLES, endpoint=False)

    rows, failures = [], []
    with timer("heat-check"):
        for t in ts:
            spectral = heat_s1_spectral(t, thetas)
            poisson = heat_s1_poisson(t, thetas)
            ta_diff = ta_difference(t, thetas, ta)
            envelope = (1.0 + t) * math.exp(-ta.eps1 * t)
            for k, theta in enumerate(thetas):
                diff = abs(float(spectral[k]) - float(poisson[k]))
                row = {
                    "t": float(t),
                    "dtheta": float(theta),
                    "spectral": float(spectral[k]),
                    "poisson": float(poisson[k]),
                    "abs_diff": diff,
                    "ta_diff": float(ta_diff[k]),
                    "envelope": envelope,
                }
                rows.append(row)
                if not diff <= tol:
                    failures.append(row)

    _emit(cfg, "heat_check", rows, tol=tol)

    if failures:
        for row in failures:
            print_error(f"t={row['t']!r} dtheta={row['dtheta']!r}: |diff|={row['abs_diff']!r} > {tol!r}")
        print_error(f"{len(failures)} of {len(rows)} rows exceed tolerance")
        return 1
    print_success(f"All {len(rows)} rows within {tol:g}")
    return 0


def _monotone_gaps(gaps) -> bool:
    mags = [abs(g) for g in gaps]
    return all(b <= a + 1e-15 for a, b in zip(mags, mags[1:]))


def cmd_sharpness(args):
    """4 pi threshold scan, TM blow-up at --beta, 8 pi e limit scan and the mu_p equality row"""
    cfg = RunConfig.from_args(args)
    deltas = cfg.params["delta_list"] if cfg.params["delta_list"] is not None else list(DEFAULT_DELTAS)
    ps = cfg.params["p_list"] if cfg.params["p_list"] is not None else list(DEFAULT_PS)
    if not deltas or not ps:
        print_error("--delta-list and --p-list must not be empty")
        return USAGE_EXIT_CODE
    if any(not 0 < d < 1 for d in deltas) or any(not p > 2 for p in ps):
        print_error("deltas must lie in (0, 1) and p values must exceed 2")
        return USAGE_EXIT_CODE
    cap = cfg.params["cap"] if cfg.params["cap"] is not None else 1.0
    gap_tol = cfg.params["tol"] if cfg.params["tol"] is not None else GAP_4PI_TOL
    lam, a = cfg.params["lambda"], cfg.params["a"]
    beta = cfg.params["beta"]

    deltas = sorted(deltas, reverse=True)
    ps = sorted(ps)
    problems = []

    with timer("sharpness"):
        delta_rows = threshold_scan(lam, cap, deltas)
        tm_rows = [
            {"log_delta": ld, "beta": beta, "tm_value": r.value, "overflowed": r.overflowed}
            for ld, r in zip(TM_LOG_DELTAS, tm_blowup_scan(beta, lam, log_deltas=TM_LOG_DELTAS))
        ]
        p_rows = limit_scan(lam, a, ps)
        for row in p_rows:
            row["side"] = "above" if row["gap_to_8pie"] > 0 else "below"

        mu_a, mu_p, mu_lam = MU_CHECK_POINT
        hp = HardySobolevParams(p=mu_p, a=mu_a, lam=mu_lam)
        closed = mu_p_closed(hp)
        grid_q = hardy_sobolev_quotient(extremal_field(hp), hp)
        quad_q = extremal_rayleigh_quotient(hp)
        mu_rows = [{
            "a": mu_a,
            "p": mu_p,
            "lambda": mu_lam,
            "closed_form": closed,
            "grid_quotient": grid_q,
            "quadrature_quotient": quad_q,
            "rel_err": abs(grid_q - closed) / closed,
        }]

    _emit(cfg, "sharpness_delta", delta_rows, cap=cap, gap_tol=gap_tol)
    _emit(cfg, "sharpness_tm", tm_rows)
    _emit(cfg, "sharpness_p", p_rows)
    _emit(cfg, "sharpness_mu", mu_rows, tol=MU_TOL)

    if not _monotone_gaps([r["gap_to_4pi"] for r in delta_rows]):
        problems.append("gap to 4 pi does not shrink as delta decreases")
    if abs(delta_rows[-1]["gap_to_4pi"]) > gap_tol:
        problems.append(
            f"final gap to 4 pi {delta_rows[-1]['gap_to_4pi']!r} exceeds {gap_tol!r} "
            f"at delta={delta_rows[-1]['delta']!r}"
        )
    tm_values = [r["tm_value"] for r in tm_rows]
    if beta > FOUR_PI and not tm_values[-1] > tm_values[0]:
        problems.append(f"TM functional does not grow at beta={beta!r}")
    if beta <= FOUR_PI and any(r["overflowed"] for r in tm_rows):
        problems.append(f"TM functional overflowed at subcritical beta={beta!r}")
    if not _monotone_gaps([r["gap_to_8pie"] for r in p_rows]):
        problems.append("p mu_p upper bound does not approach 8 pi e monotonically")
    if mu_rows[0]["rel_err"] > MU_TOL or abs(quad_q - closed) / closed > MU_TOL:
        problems.append(f"mu_p equality off by {mu_rows[0]['rel_err']!r}")

    if problems:
        for problem in problems:
            print_error(problem)
        return 1
    print_success("Sharpness trends match")
    return 0


def cmd_certify(args):
    """Fit kernel certificates and run the seeded O'Neil suite"""
    cfg = RunConfig.from_args(args)
    names = cfg.params["kernels"] if cfg.params["kernels"] is not None else list(DEFAULT_KERNELS)
    if not names:
        print_error("--kernels is empty")
        return USAGE_EXIT_CODE
    try:
        kernels = [KernelId(name) for name in names]
    except ValueError:
        print_error(f"unknown kernel in {names}; choose from {[k.value for k in KernelId]}")
        return USAGE_EXIT_CODE

    params = CertifyParams(lam=cfg.params["lambda"], a=cfg.params["a"], eps=cfg.params["eps"])
    out_dir = cfg.out if cfg.out is not None else Config.OUTPUT_DIR / "certificates"
    if cfg.out is None:
        print_warning(f"--out not given; certificates go to {out_dir}")

    rows = []
    with timer("certify"):
        for kernel in kernels:
            cert = certify_kernel(kernel, params)
            path = write_certificate(out_dir / f"certificate_{kernel.value}.json", cert)
            print_info(f"Wrote {path}")
            data = certificate_to_dict(cert)
            for regime in ("near", "far"):
                bound = data[regime]
                rows.append({
                    "kernel": kernel.value,
                    "regime": regime,
                    "fitted_constant": bound["fitted_constant"],
                    "held_out_report": bound["held_out_report"],
                    "grid_hash": bound["grid_hash"],
                })

        slack = oneil_suite(np.random.default_rng(cfg.seed))

    rows.append({"kernel": "oneil", "regime": "z_n", "fitted_constant": slack,
                 "held_out_report": slack, "grid_hash": ""})
    sys.stdout.write(format_table(rows, cfg.fmt, cfg.meta(table="certify")))

    if slack < ONEIL_TOL:
        print_error(f"O'Neil inequality violated, slack {slack!r}")
        return 1
    print_success(f"{len(kernels)} certificate(s) written to {out_dir}")
    return 0


def cmd_config(args):
    """Print the configuration summary"""
    ConfigValidator.print_config_summary()
    return 0


# ============================================================================
# Main CLI Setup
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=0.25, help="flux a in [0, 1/2]")
    common.add_argument("--lambda", dest="lam", type=float, default=1.0, help="lambda > 0")
    common.add_argument("--eps", type=float, default=None, help="T_a regularization (default from a, lambda)")
    common.add_argument("--beta", type=float, default=4.1 * math.pi, help="TM exponent")
    common.add_argument("--p-list", type=_float_list, default=None, help="comma-separated p values")
    common.add_argument("--delta-list", type=_float_list, default=None, help="comma-separated scales")
    common.add_argument("--t-list", type=_float_list, default=None, help="comma-separated heat times")
    common.add_argument("--kernels", type=_name_list, default=None, help="e.g. phi1,phi2,phi4")
    common.add_argument("--cap", type=float, default=None, help="constant C of the threshold display")
    common.add_argument("--tol", type=float, default=None, help="override the command tolerance")
    common.add_argument("--out", default=None, help="output directory (stdout when omitted)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=Config.SEED)

    parser = argparse.ArgumentParser(
        prog="magtm",
        description="magtm - numerical checks for magnetic Trudinger-Moser inequalities",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  magtm heat-check                          Circle heat kernel, both representations
  magtm sharpness --lambda 2                4 pi and 8 pi e scans, mu_p equality
  magtm certify --kernels phi1,phi4 --out certs
  magtm config                              Show configuration
        """,
    )
    parser.add_argument("-v", "--version", action="version", version=f"magtm {__version__}")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    subparsers.add_parser("heat-check", parents=[common], help="Heat kernel sweeps").set_defaults(
        func=cmd_heat_check
    )
    subparsers.add_parser("sharpness", parents=[common], help="Sharp constant scans").set_defaults(
        func=cmd_sharpness
    )
    subparsers.add_parser("certify", parents=[common], help="Kernel certificates").set_defaults(
        func=cmd_certify
    )
    subparsers.add_parser("config", help="Configuration summary").set_defaults(func=cmd_config)
    return parser


def main(argv=None):
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    ConfigValidator.validate_and_exit_if_invalid()
    setup_logging(console_output=True)

    try:
        status = args.func(args)
    except KeyboardInterrupt:
        print_info("\nOperation cancelled")
        return 1
    except UsageError as e:
        print_error(str(e))
        return USAGE_EXIT_CODE
    except MagtmError as e:
        print_error(f"{type(e).__name__}: {e}")
        return 1
    except Exception as e:
        log.exception("Unexpected error")
        print_error(f"Unexpected error: {e}")
        return 1

    stats = perf_monitor.get_stats()
    if "total_runs" in stats:
        log.info(f"Timing summary: {stats}")
    return status


if __name__ == "__main__":
    sys.exit(main())
