"""Batch driver and command-line interface.

Grid sweeps evaluate the closed-form pipeline at every point of a cartesian
(s, nbar, phi, theta) grid and emit one flat record per point, in
deterministic lexicographic order regardless of how many worker processes
are used. On top of the sweep sit the triangle-inequality auditor, the
recreation-zone search, the per-figure data presets, and the oracle
cross-check.

Exit codes of the `purity-swap` executable:
    0  success
    1  usage error
    2  consistency violation (a physics self-check failed)
    3  audit found inequality violations (audit subcommand only)
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import ConsistencyViolation
from .fock import FieldState, coherent_state
from .interferometer import (
    InterferometerConfig,
    attractor_fidelity,
    beam_splitter_state,
    summarize,
)
from .jcm import BlockConvention
from .oracle import OracleReport, equivalence_report

SCHEMA_VERSION = 1


class SweepRow(NamedTuple):
    """One grid point: configuration columns followed by every observable."""

    s: float
    nbar: float
    theta: float
    phi: float
    dim: int
    convention: str
    w_plus: float
    w_minus: float
    predictability: float
    visibility: float
    contrast_re: float
    contrast_im: float
    c_up_re: float
    c_up_im: float
    c_down_re: float
    c_down_im: float
    sx: float
    sy: float
    sz: float
    p_q: float
    p_m: float
    g_q: float
    g_m: float
    g_joint: float
    mutual_info: float
    al_left_slack: float
    al_right_slack: float


COLUMNS = SweepRow._fields


@dataclass(frozen=True)
class GridSpec:
    """A cartesian parameter grid; theta_range is (start, stop, step)."""

    s_values: tuple[float, ...]
    nbar_values: tuple[float, ...]
    theta_range: tuple[float, float, float]
    phi_values: tuple[float, ...] = (0.0,)
    convention: BlockConvention = BlockConvention.UNITARY_STANDARD
    dim: int | None = None

    def __post_init__(self):
        if not self.s_values or not self.nbar_values or not self.phi_values:
            raise ValueError("grid value lists must be non-empty")
        start, stop, step = self.theta_range
        if step <= 0:
            raise ValueError(f"theta step must be positive, got {step}")
        if stop < start:
            raise ValueError(f"theta range is empty: start {start} > stop {stop}")

    def theta_values(self) -> np.ndarray:
        start, stop, step = self.theta_range
        # The small epsilon keeps an exactly-representable endpoint inside the
        # grid despite floating-point division.
        count = int(math.floor((stop - start) / step + 1.0 + 1e-9))
        return start + step * np.arange(count)

    def row_count(self) -> int:
        return (
            len(self.s_values)
            * len(self.nbar_values)
            * len(self.phi_values)
            * len(self.theta_values())
        )

    def points(self) -> Iterator[tuple]:
        """Worker argument tuples in lexicographic (s, nbar, phi, theta) order."""
        thetas = self.theta_values()
        for s in self.s_values:
            for nbar in self.nbar_values:
                for phi in self.phi_values:
                    for theta in thetas:
                        yield (s, nbar, phi, float(theta), self.dim,
                               self.convention.value)


@lru_cache(maxsize=64)
def _cached_field(nbar: float, fieldphase: float, dim: int) -> FieldState:
    # FieldState is immutable, so per-process reuse across grid points is safe.
    return coherent_state(nbar, fieldphase, dim)


def _config_from_point(point: tuple) -> InterferometerConfig:
    s, nbar, phi, theta, dim, convention = point
    return InterferometerConfig(
        s=s, nbar=nbar, theta=theta, phi=phi, dim=dim,
        convention=BlockConvention.from_string(convention),
    )


def _point_row(point: tuple) -> SweepRow:
    config = _config_from_point(point)
    field = _cached_field(config.nbar, config.fieldphase, config.resolved_dim)
    try:
        summary = summarize(config, field=field)
    except ConsistencyViolation as exc:
        raise ConsistencyViolation(f"{exc} [config {point}]") from None
    return SweepRow(
        s=config.s,
        nbar=config.nbar,
        theta=config.theta,
        phi=config.phi,
        dim=config.resolved_dim,
        convention=config.convention.value,
        w_plus=summary.w_plus,
        w_minus=summary.w_minus,
        predictability=summary.predictability,
        visibility=summary.visibility,
        contrast_re=summary.contrast.real,
        contrast_im=summary.contrast.imag,
        c_up_re=summary.c_up.real,
        c_up_im=summary.c_up.imag,
        c_down_re=summary.c_down.real,
        c_down_im=summary.c_down.imag,
        sx=float(summary.bloch_final[0]),
        sy=float(summary.bloch_final[1]),
        sz=float(summary.bloch_final[2]),
        p_q=summary.p_q,
        p_m=summary.p_m,
        g_q=summary.g_q,
        g_m=summary.g_m,
        g_joint=summary.g_joint,
        mutual_info=summary.mutual_info,
        al_left_slack=summary.al_left_slack,
        al_right_slack=summary.al_right_slack,
    )


def _map_points(fn, points: list, jobs: int) -> Iterator:
    if jobs <= 1:
        return map(fn, points)
    chunk = max(1, len(points) // (jobs * 8))
    executor = ProcessPoolExecutor(max_workers=jobs)
    # The executor shuts down when the iterator is exhausted.
    return _drain(executor, executor.map(fn, points, chunksize=chunk))


def _drain(executor, results):
    try:
        yield from results
    finally:
        executor.shutdown()


def sweep(spec: GridSpec, jobs: int = 1) -> Iterator[SweepRow]:
    """Stream one SweepRow per grid point, in grid order."""
    return _map_points(_point_row, list(spec.points()), jobs)


@dataclass(frozen=True)
class AuditReport:
    """Outcome of a triangle-inequality audit over a grid."""

    points: int
    tolerance: float
    violations: tuple[SweepRow, ...]
    worst_slack: float
    worst_row: SweepRow | None

    @property
    def violation_count(self) -> int:
        return len(self.violations)


def audit_araki_lieb(spec: GridSpec, tolerance: float = 1e-9,
                     jobs: int = 1) -> AuditReport:
    """Evaluate both inequality slacks at every grid point.

    A point violates the conjectured bounds when either slack falls below
    -tolerance. Violations are data, not errors; each record carries the
    full configuration so it can be re-run and reproduced exactly.
    """
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    points = 0
    violations: list[SweepRow] = []
    worst_slack = math.inf
    worst_row = None
    for row in sweep(spec, jobs=jobs):
        points += 1
        slack = min(row.al_left_slack, row.al_right_slack)
        if slack < worst_slack:
            worst_slack = slack
            worst_row = row
        if slack < -tolerance:
            violations.append(row)
    return AuditReport(
        points=points,
        tolerance=tolerance,
        violations=tuple(violations),
        worst_slack=worst_slack,
        worst_row=worst_row,
    )


@dataclass(frozen=True)
class RecreationResult:
    """Located purity-recreation peak for one (nbar, s) preparation."""

    nbar: float
    s: float
    theta_star: float
    p_q_peak: float
    attractor_fid: float
    ratio: float  # theta_star / sqrt(nbar), for comparison with the nominal zone


def locate_recreation(
    nbar: float,
    s: float,
    window: tuple[float, float] | None = None,
    step: float = 0.002,
    dim: int | None = None,
    convention: BlockConvention = BlockConvention.UNITARY_STANDARD,
) -> RecreationResult:
    """Scan the qubit purity over a theta window and return its peak.

    The default window [0.2 sqrt(nbar), 1.5 sqrt(nbar)] brackets both the
    nominal recreation phase sqrt(nbar) and the half-revival phase
    sqrt(nbar)/2; the located peak, not either formula, is authoritative.
    The attractor fidelity at the peak uses the contrast phase arg(C) there.
    """
    if nbar <= 0:
        raise ValueError(f"recreation search needs nbar > 0, got {nbar}")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    root = math.sqrt(nbar)
    lo, hi = window if window is not None else (0.2 * root, 1.5 * root)
    count = int(math.floor((hi - lo) / step + 1.0 + 1e-9))
    if count <= 0:
        raise ValueError(f"empty search window ({lo}, {hi})")
    best_theta, best_pq = lo, -math.inf
    for k in range(count):
        theta = lo + step * k
        config = InterferometerConfig(s=s, nbar=nbar, theta=theta, dim=dim,
                                      convention=convention)
        field = _cached_field(nbar, 0.0, config.resolved_dim)
        summary = summarize(config, field=field)
        if summary.p_q > best_pq:
            best_pq = summary.p_q
            best_theta = theta
    config = InterferometerConfig(s=s, nbar=nbar, theta=best_theta, dim=dim,
                                  convention=convention)
    field = _cached_field(nbar, 0.0, config.resolved_dim)
    summary = summarize(config, field=field)
    rho_bs = beam_splitter_state(config.blocks(), field, s)
    alpha = math.atan2(summary.contrast.imag, summary.contrast.real)
    fid = attractor_fidelity(rho_bs, alpha)
    return RecreationResult(
        nbar=nbar,
        s=s,
        theta_star=best_theta,
        p_q_peak=best_pq,
        attractor_fid=fid,
        ratio=best_theta / root,
    )


# ---------------------------------------------------------------------------
# Emission

def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(rows: Iterable[tuple], stream, header: tuple[str, ...] = COLUMNS,
              extra: dict[str, callable] | None = None) -> int:
    """Write rows as CSV with round-trippable float formatting.

    extra maps additional column names to callables deriving their value
    from the finished row; used by figure presets that need derived columns.
    """
    extra = extra or {}
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(list(header) + list(extra))
    count = 0
    for row in rows:
        values = [_fmt(v) for v in row]
        values += [_fmt(fn(row)) for fn in extra.values()]
        writer.writerow(values)
        count += 1
    return count


def write_json(rows: Iterable[SweepRow], stream, spec: GridSpec) -> int:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "s_values": list(spec.s_values),
            "nbar_values": list(spec.nbar_values),
            "theta_range": list(spec.theta_range),
            "phi_values": list(spec.phi_values),
            "convention": spec.convention.value,
            "dim": spec.dim,
        },
        "rows": [row._asdict() for row in rows],
    }
    json.dump(payload, stream, indent=1)
    stream.write("\n")
    return len(payload["rows"])


# ---------------------------------------------------------------------------
# Figure-data presets

FIG_PRESETS = ("fig2", "fig3", "fig4", "fig5")

_FIG2_EXTRA = {
    "g_diff_abs": lambda row: abs(row.g_q - row.g_m),
    "g_sum": lambda row: row.g_q + row.g_m,
}


def figdata(preset: str, out_dir, jobs: int = 1,
            convention: BlockConvention = BlockConvention.UNITARY_STANDARD) -> list[Path]:
    """Generate the CSV data behind one figure preset into out_dir.

    fig2: vacuum swap curves plus the three inequality terms (extra columns).
    fig3: collapse-and-revival purity traces at nbar = 20.
    fig4/fig5: (nbar, theta) sheets for the pure and unpolarized preparations.
    """
    if preset not in FIG_PRESETS:
        raise ValueError(f"unknown preset {preset!r}; choose from {FIG_PRESETS}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(name: str, spec: GridSpec, extra=None):
        path = out_dir / name
        with open(path, "w", newline="") as f:
            write_csv(sweep(spec, jobs=jobs), f, extra=extra)
        written.append(path)

    if preset == "fig2":
        emit("fig2.csv",
             GridSpec((0.0,), (0.0,), (0.0, 1.5, 0.002), convention=convention),
             extra=_FIG2_EXTRA)
    elif preset == "fig3":
        emit("fig3.csv",
             GridSpec((0.0,), (20.0,), (0.0, 8.0, 0.005), convention=convention))
    else:
        nbars = tuple(float(x) for x in np.arange(0.0, 40.0 + 1e-9, 0.5))
        for s, tag in ((1.0, "s1"), (0.0, "s0")):
            emit(f"{preset}_{tag}.csv",
                 GridSpec((s,), nbars, (0.0, 8.0, 0.02), convention=convention))
    return written


# ---------------------------------------------------------------------------
# Oracle check

def _point_report(point: tuple) -> OracleReport:
    return equivalence_report(_config_from_point(point))


def oracle_check(spec: GridSpec, jobs: int = 1) -> list[OracleReport]:
    """Run the closed-form-versus-matrix comparison at every grid point."""
    return list(_map_points(_point_report, list(spec.points()), jobs))


# ---------------------------------------------------------------------------
# Command-line interface

class _Parser(argparse.ArgumentParser):
    # Usage problems exit with code 1 (argparse defaults to 2, which is
    # reserved for consistency violations here).
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step reals, got {text!r}")


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi reals, got {text!r}")


def _parse_dim(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"dim must be positive, got {value}")
    return value


def _add_grid_arguments(sub, s_default="0", nbar_default="0", theta_default=None):
    sub.add_argument("--s", type=_parse_floats, default=_parse_floats(s_default),
                     help=f"comma-separated inversions in [-1, 1] (default {s_default})")
    sub.add_argument("--nbar", type=_parse_floats, default=_parse_floats(nbar_default),
                     help=f"comma-separated mean photon numbers (default {nbar_default})")
    theta_kwargs = {"required": True} if theta_default is None else \
        {"default": _parse_range(theta_default)}
    sub.add_argument("--theta", type=_parse_range,
                     help="vacuum Rabi phase grid start:stop:step", **theta_kwargs)
    sub.add_argument("--phi", type=_parse_floats, default=(0.0,),
                     help="comma-separated phase-shifter settings in radians (default 0)")
    sub.add_argument("--dim", type=_parse_dim, default=None,
                     help="Fock truncation dimension, integer or 'auto' (default auto)")
    sub.add_argument("--convention", choices=["standard", "literal"],
                     default="standard", help="evolution-block convention")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def _spec_from_args(args) -> GridSpec:
    return GridSpec(
        s_values=args.s,
        nbar_values=args.nbar,
        theta_range=args.theta,
        phi_values=args.phi,
        convention=BlockConvention.from_string(args.convention),
        dim=args.dim,
    )


def _cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    rows = sweep(spec, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", newline="") as f:
            count = write_csv(rows, f) if args.format == "csv" else write_json(rows, f, spec)
        print(f"wrote {count} rows to {args.out}", file=sys.stderr)
    else:
        if args.format == "csv":
            write_csv(rows, sys.stdout)
        else:
            write_json(rows, sys.stdout, spec)
    return 0


def _cmd_audit(args) -> int:
    spec = _spec_from_args(args)
    report = audit_araki_lieb(spec, tolerance=args.tolerance, jobs=args.jobs)
    print(f"audited {report.points} grid points at tolerance {args.tolerance:g}")
    print(f"violations: {report.violation_count}")
    print(f"worst slack: {report.worst_slack:.6e}")
    if report.worst_row is not None:
        w = report.worst_row
        print(f"worst config: s={w.s:g} nbar={w.nbar:g} theta={w.theta:g} "
              f"phi={w.phi:g} convention={w.convention}")
    if args.out:
        with open(args.out, "w", newline="") as f:
            write_csv(report.violations, f)
        print(f"violation records written to {args.out}", file=sys.stderr)
    return 3 if report.violation_count else 0


def _cmd_figdata(args) -> int:
    paths = figdata(args.preset, args.out, jobs=args.jobs,
                    convention=BlockConvention.from_string(args.convention))
    for path in paths:
        print(path)
    return 0


def _cmd_recreation(args) -> int:
    result = locate_recreation(
        nbar=args.nbar, s=args.s, window=args.window, step=args.step,
        dim=args.dim, convention=BlockConvention.from_string(args.convention),
    )
    fields = {
        "nbar": result.nbar,
        "s": result.s,
        "theta_star": result.theta_star,
        "p_q_peak": result.p_q_peak,
        "attractor_fid": result.attractor_fid,
        "ratio_theta_to_sqrt_nbar": result.ratio,
    }
    if args.format == "json":
        json.dump({"schema_version": SCHEMA_VERSION, **fields}, sys.stdout, indent=1)
        sys.stdout.write("\n")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(fields.keys())
        writer.writerow(_fmt(v) for v in fields.values())
    return 0


def _cmd_oracle_check(args) -> int:
    spec = _spec_from_args(args)
    reports = oracle_check(spec, jobs=args.jobs)
    worst = max(reports, key=lambda r: r.max_deviation)
    defect = max(r.unitarity_defect for r in reports)
    print(f"checked {len(reports)} grid points")
    print(f"max deviation (bloch, p_q, p_m, g_joint): "
          f"{max(r.max_dev_bloch for r in reports):.3e} "
          f"{max(r.max_dev_pq for r in reports):.3e} "
          f"{max(r.max_dev_pm for r in reports):.3e} "
          f"{max(r.max_dev_g_joint for r in reports):.3e}")
    print(f"max unitarity defect: {defect:.3e}")
    if args.out:
        header = ("s", "nbar", "theta", "phi", "dim", "convention",
                  "dev_bloch", "dev_pq", "dev_pm", "dev_g_joint", "unitarity_defect")
        with open(args.out, "w", newline="") as f:
            write_csv(
                ((r.config.s, r.config.nbar, r.config.theta, r.config.phi,
                  r.config.resolved_dim, r.config.convention.value,
                  r.max_dev_bloch, r.max_dev_pq, r.max_dev_pm,
                  r.max_dev_g_joint, r.unitarity_defect) for r in reports),
                f, header=header)
    if spec.convention is BlockConvention.UNITARY_STANDARD \
            and worst.max_deviation > args.tolerance:
        print(f"FAIL: deviation {worst.max_deviation:.3e} exceeds "
              f"tolerance {args.tolerance:g} at {worst.config}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="purity-swap",
        description="Purity exchange between a qubit and a cavity mode: "
                    "grid sweeps, inequality audits, figure data, and oracle checks.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_sweep = subs.add_parser("sweep", help="evaluate observables over a grid")
    _add_grid_arguments(p_sweep)
    p_sweep.add_argument("--out", default=None, help="output path (default stdout)")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_audit = subs.add_parser("audit", help="audit the linear-entropy triangle bounds")
    _add_grid_arguments(p_audit, s_default="-1,-0.5,0,0.5,1",
                        nbar_default="0,1,2,5,10,20", theta_default="0:6:0.01")
    p_audit.add_argument("--tolerance", type=float, default=1e-9,
                         help="slack tolerance (default 1e-9)")
    p_audit.add_argument("--out", default=None,
                         help="write violation records as CSV to this path")
    p_audit.set_defaults(func=_cmd_audit)

    p_fig = subs.add_parser("figdata", help="generate figure-preset CSV data")
    p_fig.add_argument("--preset", choices=FIG_PRESETS, required=True)
    p_fig.add_argument("--out", default=".", help="output directory (default .)")
    p_fig.add_argument("--jobs", type=int, default=1)
    p_fig.add_argument("--convention", choices=["standard", "literal"],
                       default="standard")
    p_fig.set_defaults(func=_cmd_figdata)

    p_rec = subs.add_parser("recreation", help="locate the purity-recreation peak")
    p_rec.add_argument("--nbar", type=float, required=True)
    p_rec.add_argument("--s", type=float, default=0.0)
    p_rec.add_argument("--window", type=_parse_window, default=None,
                       help="theta search window lo:hi "
                            "(default 0.2*sqrt(nbar):1.5*sqrt(nbar))")
    p_rec.add_argument("--step", type=float, default=0.002)
    p_rec.add_argument("--dim", type=_parse_dim, default=None)
    p_rec.add_argument("--convention", choices=["standard", "literal"],
                       default="standard")
    p_rec.add_argument("--format", choices=["csv", "json"], default="csv")
    p_rec.set_defaults(func=_cmd_recreation)

    p_oracle = subs.add_parser("oracle-check",
                               help="compare closed forms against the matrix oracle")
    _add_grid_arguments(p_oracle)
    p_oracle.add_argument("--tolerance", type=float, default=1e-10)
    p_oracle.add_argument("--out", default=None,
                          help="write per-point deviations as CSV to this path")
    p_oracle.set_defaults(func=_cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyViolation as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
