"""Command-line pipelines that write the figure-reproduction tables.

Five subcommands cover the two legs of the package: ``free-phase``,
``free-rate`` and ``free-nu`` sample the closed-form weak-coupling theory;
``ed-run`` and ``ed-scan`` run the lattice chain.  Each writes
tab-separated tables plus a ``run_manifest.json`` describing parameters,
conventions and output status.  Exit codes: 0 success, 1 invalid
configuration, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import platform
import sys

import numpy as np
import scipy

from . import __version__
from .config import MODES, RunConfig, build_config, config_summary, parse_kv_file
from .free_theory import (
    FreeParams,
    QuadratureError,
    QuadratureSettings,
    phase_field_free,
    rate_function_free,
)
from .lattice import EvolutionError, LatticeParams
from .observables import (
    DegenerateGroundStateError,
    lattice_phase_field,
    run_quench,
    scan_phase_diagram,
)
from .tables import write_manifest, write_table
from .topology import (
    AmbiguousWindingError,
    GridTooCoarseError,
    SingularNodeError,
    nu_series,
    vortex_chart,
)

NUMERICAL_ERRORS = (
    QuadratureError,
    AmbiguousWindingError,
    SingularNodeError,
    GridTooCoarseError,
    DegenerateGroundStateError,
    EvolutionError,
    RuntimeError,
    FloatingPointError,
    np.linalg.LinAlgError,
)

SERIES_COLUMNS = ("t*m", "Re_L", "Im_L", "Gamma/m", "rate_g/m",
                  "rate_K/m", "nu")
PHASE_COLUMNS = ("k/m", "t*m", "Re_g", "Im_g", "phase", "singular")
VORTEX_COLUMNS = ("k/m", "t*m", "charge")
SCAN_COLUMNS = ("e/m", "t*m", "nu", "Gamma/m")


def _phase_rows(field, m: float):
    """Flatten a phase field to table columns, time-major."""
    n_t, n_k = field.amp.shape
    kk = np.tile(field.k_grid / m, n_t)
    tt = np.repeat(field.t_grid * m, n_k)
    amp = field.amp.reshape(-1)
    return [kk, tt, amp.real, amp.imag, field.phase.reshape(-1),
            field.singular_mask.reshape(-1).astype(int)]


def _write_phase_outputs(cfg: RunConfig, field, outputs: list) -> None:
    path = os.path.join(cfg.out_dir, "phase_field.tsv")
    rows = write_table(path, PHASE_COLUMNS, _phase_rows(field, cfg.physics.m))
    outputs.append({"file": "phase_field.tsv", "rows": rows, "status": "ok"})

    chart = vortex_chart(field)
    m = cfg.physics.m
    path = os.path.join(cfg.out_dir, "vortices.tsv")
    rows = write_table(
        path, VORTEX_COLUMNS,
        [np.array([v.k / m for v in chart]),
         np.array([v.t * m for v in chart]),
         np.array([v.charge for v in chart], dtype=int)],
    )
    outputs.append({"file": "vortices.tsv", "rows": rows, "status": "ok"})


def _series_free(cfg: RunConfig, nu: np.ndarray | None,
                 outputs: list) -> None:
    p: FreeParams = cfg.physics
    quad = QuadratureSettings(cutoff=cfg.extras.get("cutoff"))
    rate = np.array([rate_function_free(t, p, quad) for t in cfg.t_grid])
    nan = np.full(cfg.t_grid.size, np.nan)
    nu_col = nan if nu is None else nu
    path = os.path.join(cfg.out_dir, "series.tsv")
    rows = write_table(
        path, SERIES_COLUMNS,
        [cfg.t_grid * p.m, nan, nan, rate / p.m, nan, nan, nu_col],
    )
    outputs.append({"file": "series.tsv", "rows": rows, "status": "ok"})


def _run_free_phase(cfg: RunConfig, outputs: list) -> int:
    field = phase_field_free(cfg.k_grid, cfg.t_grid, cfg.physics)
    _write_phase_outputs(cfg, field, outputs)
    return 0


def _run_free_rate(cfg: RunConfig, outputs: list) -> int:
    _series_free(cfg, None, outputs)
    return 0


def _run_free_nu(cfg: RunConfig, outputs: list) -> int:
    field = phase_field_free(cfg.k_grid, cfg.t_grid, cfg.physics)
    nu = nu_series(field)
    _series_free(cfg, nu, outputs)
    return 0


def _run_ed(cfg: RunConfig, outputs: list) -> int:
    p: LatticeParams = cfg.physics
    data = run_quench(p, cfg.t_grid)
    path = os.path.join(cfg.out_dir, "series.tsv")
    rows = write_table(
        path, SERIES_COLUMNS,
        [cfg.t_grid * p.m, data.loschmidt.real, data.loschmidt.imag,
         data.rate / p.m, data.rate_g / p.m, data.rate_echo / p.m, data.nu],
    )
    outputs.append({"file": "series.tsv", "rows": rows, "status": "ok"})
    field = lattice_phase_field(p, cfg.t_grid, data.k_modes, data.g)
    path = os.path.join(cfg.out_dir, "phase_field.tsv")
    rows = write_table(path, PHASE_COLUMNS, _phase_rows(field, p.m))
    outputs.append({"file": "phase_field.tsv", "rows": rows, "status": "ok"})
    return 0


def _run_ed_scan(cfg: RunConfig, outputs: list, errors: list) -> int:
    p: LatticeParams = cfg.physics
    points = scan_phase_diagram(p, cfg.e_values, cfg.t_grid)
    cols = [[], [], [], []]
    for point in points:
        if point.data is None:
            errors.append({"e/m": point.e / p.m, "error": point.error})
            continue
        cols[0].extend([point.e / p.m] * cfg.t_grid.size)
        cols[1].extend((cfg.t_grid * p.m).tolist())
        cols[2].extend(point.data.nu.tolist())
        cols[3].extend((point.data.rate / p.m).tolist())
    path = os.path.join(cfg.out_dir, "scan.tsv")
    rows = write_table(
        path, SCAN_COLUMNS,
        [np.array(cols[0]), np.array(cols[1]),
         np.array(cols[2], dtype=int), np.array(cols[3])],
    )
    status = "partial" if errors else "ok"
    outputs.append({"file": "scan.tsv", "rows": rows, "status": status})
    return 2 if errors else 0


def run(cfg: RunConfig) -> int:
    """Execute one pipeline; writes tables and the manifest, returns 0/2."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    outputs: list = []
    errors: list = []
    runners = {
        "free-phase": lambda: _run_free_phase(cfg, outputs),
        "free-rate": lambda: _run_free_rate(cfg, outputs),
        "free-nu": lambda: _run_free_nu(cfg, outputs),
        "ed-run": lambda: _run_ed(cfg, outputs),
        "ed-scan": lambda: _run_ed_scan(cfg, outputs, errors),
    }
    code = runners[cfg.mode]()
    manifest = {
        "tool": {
            "name": "thetaquench",
            "version": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
        "run": config_summary(cfg),
        "units": {
            "momentum": "k/m", "time": "t*m", "rate": "rate/m",
            "coupling": "e/m",
        },
        "conventions": {
            "quench_angle": "delta theta wrapped to (-pi, pi]",
            "spinor_basis": "gamma0 = diag(1,-1), gamma1 = [[0,1],[-1,0]], "
                            "gamma5 = [[0,1],[1,0]]",
            "fourier_kernel": "exp(-i k x)",
            "rate_normalization": "-log magnitude / (n_sites * a) on the "
                                  "lattice; per unit length in the "
                                  "continuum",
        },
        "outputs": outputs,
        "errors": errors,
        "status": "partial" if errors else "ok",
    }
    write_manifest(os.path.join(cfg.out_dir, "run_manifest.json"), manifest)
    return code


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key = value configuration file")
    sub.add_argument("--out", help="output directory (default: current)")
    sub.add_argument("--m", type=float, help="fermion mass")


def _add_free(sub: argparse.ArgumentParser, k_grid: bool) -> None:
    _add_common(sub)
    sub.add_argument("--theta", type=float, help="initial vacuum angle")
    sub.add_argument("--theta-prime", type=float, dest="theta_prime",
                     help="post-quench vacuum angle")
    sub.add_argument("--delta-theta", type=float, dest="delta_theta",
                     help="quench angle (alternative to --theta-prime)")
    sub.add_argument("--t-max", type=float, dest="t_max")
    sub.add_argument("--t-points", type=int, dest="t_points")
    if k_grid:
        sub.add_argument("--k-max", type=float, dest="k_max")
        sub.add_argument("--k-points", type=int, dest="k_points")


def _add_ed(sub: argparse.ArgumentParser, scan: bool) -> None:
    _add_common(sub)
    sub.add_argument("--n-sites", type=int, dest="n_sites")
    sub.add_argument("--a", type=float, help="lattice spacing")
    sub.add_argument("--t-max", type=float, dest="t_max")
    sub.add_argument("--t-step", type=float, dest="t_step")
    if scan:
        sub.add_argument("--e-min", type=float, dest="e_min")
        sub.add_argument("--e-max", type=float, dest="e_max")
        sub.add_argument("--e-step", type=float, dest="e_step")
    else:
        sub.add_argument("--e", type=float, help="gauge coupling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetaquench",
        description="Vacuum-angle quench observables: closed-form "
                    "weak-coupling theory and lattice exact "
                    "diagonalization.",
    )
    subs = parser.add_subparsers(dest="mode", required=True)
    free_phase = subs.add_parser(
        "free-phase", help="phase field and vortices of the mode amplitude")
    _add_free(free_phase, k_grid=True)
    free_rate = subs.add_parser(
        "free-rate", help="return-probability rate of the free quench")
    _add_free(free_rate, k_grid=False)
    free_rate.add_argument("--cutoff", type=float,
                           help="momentum cutoff of the rate integral")
    free_nu = subs.add_parser(
        "free-nu", help="topological order parameter of the free quench")
    _add_free(free_nu, k_grid=True)
    free_nu.add_argument("--cutoff", type=float,
                         help="momentum cutoff of the rate integral")
    ed_run = subs.add_parser(
        "ed-run", help="one lattice quench: rates, correlators, invariant")
    _add_ed(ed_run, scan=False)
    ed_scan = subs.add_parser(
        "ed-scan", help="coupling sweep of the lattice quench")
    _add_ed(ed_scan, scan=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    raw: dict = {}
    if args.config is not None:
        raw.update(parse_kv_file(args.config))
    for key, value in vars(args).items():
        if key in ("mode", "config") or value is None:
            continue
        raw[key] = value
    return build_config(args.mode, raw)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, but 2 is reserved for
        # numerical failures; fold bad usage into the config exit code.
        # --help passes through as 0.
        return 1 if exc.code == 2 else int(exc.code or 0)
    try:
        cfg = config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return run(cfg)
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
