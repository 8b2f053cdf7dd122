"""Command-line front end.

Subcommands: ``simulate``, ``sweep``, ``find-t0``, ``find-max-squeeze`` and
``reproduce-paper``. All physics runs in dimensionless units (g0 = 1, time in
1/g0); ``--units si`` only rescales what is printed and written, using
``g0 = 2 pi x (--g0) MHz``.

Options can also come from a ``key=value`` file given with ``--config``;
command-line flags win on conflict.

Exit codes: 0 success, 1 acceptance failure, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from .dynamics import DecayRates
from .errors import InvalidArgumentError, NumericalError
from .protocols import BENCHMARK_T0, ProtocolSpec, SimulationResult, run_conversion, run_many
from .pulses import Direction, PulseParams, Variant
from .search import constraint_report, find_max_squeeze, find_minimal_time

EXIT_OK, EXIT_ACCEPTANCE, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3

CSV_COLUMNS = ["t", "g1", "g2", "g1_mod", "g2_mod", "P_vac", "P_a1", "P_bm", "P_a2", "fidelity"]
SWEEP_COLUMNS = ["tau", "squeeze", "fidelity", "peak_P_bm", "peak_g1_mod", "peak_g2_mod", "feasible"]

_TAU_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*(T0|t0|ns|us|ms|s)?\s*$")
_SI_SECONDS = {"ns": 1e-9, "us": 1e-6, "ms": 1e-3, "s": 1.0}


class Units:
    """Display transform between dimensionless values and SI (ns, 2 pi x MHz)."""

    def __init__(self, mode: str, g0_mhz: float):
        if g0_mhz <= 0 or not math.isfinite(g0_mhz):
            raise InvalidArgumentError("--g0 must be a positive number of MHz")
        self.si = mode == "si"
        self.g0_mhz = g0_mhz
        self.g0_angular = 2 * math.pi * g0_mhz * 1e6

    def time(self, t):
        return np.asarray(t) / self.g0_angular * 1e9 if self.si else np.asarray(t)

    def coupling(self, g):
        return np.asarray(g) * self.g0_mhz if self.si else np.asarray(g)

    @property
    def time_label(self) -> str:
        return "ns" if self.si else "1/g0"

    @property
    def coupling_label(self) -> str:
        return "2pi*MHz" if self.si else "g0"


def parse_tau(text: str, t0: float, units: Units) -> float:
    """Conversion time in units of 1/g0 from ``3.24``, ``1T0``, ``103ns`` and similar."""
    m = _TAU_RE.match(text)
    if not m:
        raise InvalidArgumentError(f"cannot parse time {text!r}")
    value, unit = float(m.group(1)), m.group(2)
    if unit in ("T0", "t0"):
        tau = value * t0
    elif unit:
        if not units.si:
            raise InvalidArgumentError(f"SI time {text!r} requires --units si")
        tau = value * _SI_SECONDS[unit] * units.g0_angular
    else:
        tau = value
    if not math.isfinite(tau) or tau <= 0:
        raise InvalidArgumentError(f"conversion time must be positive, got {text!r}")
    return tau


def parse_rates(text: str) -> DecayRates:
    """``benchmark``, ``none`` or ``gamma1,gamma2,kappa`` as fractions of g0."""
    key = text.strip().lower()
    if key == "benchmark":
        return DecayRates.benchmark()
    if key in ("none", "0"):
        return DecayRates()
    parts = [p for p in key.split(",") if p.strip()]
    if len(parts) != 3:
        raise InvalidArgumentError(f"--rates expects 'benchmark', 'none' or three numbers, got {text!r}")
    try:
        g1, g2, kappa = (float(p) for p in parts)
    except ValueError as exc:
        raise InvalidArgumentError(f"bad --rates value {text!r}") from exc
    return DecayRates(gamma1=g1, gamma2=g2, kappa=kappa)


def parse_list(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def read_config(path: str) -> dict[str, str]:
    """Read ``key=value`` lines; ``#`` starts a comment. Keys use flag names (dashes or underscores)."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgumentError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; command-line flags override it")
    p.add_argument("--units", choices=["dimensionless", "si"], default="dimensionless")
    p.add_argument("--g0", type=float, default=5.0, help="peak coupling / 2pi in MHz (SI display only)")
    p.add_argument("--t0", choices=["benchmark", "search"], default="benchmark",
                   help="T0 used by the 'T0' time suffix: quoted 3.24/g0 or recomputed")
    p.add_argument("--out", help="output path")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_protocol(p: argparse.ArgumentParser, *, single: bool) -> None:
    p.add_argument("--variant", choices=[v.value for v in Variant], default="dressed")
    p.add_argument("--direction", choices=[d.value for d in Direction], default="a1-to-a2")
    p.add_argument("--rates", default="benchmark", help="'benchmark', 'none' or gamma1,gamma2,kappa in units of g0")
    p.add_argument("--samples", type=int, default=4000, help="RK4 samples per conversion time")
    p.add_argument("--debug-zero-gx", action="store_true", help=argparse.SUPPRESS)
    if single:
        p.add_argument("--tau", default="1T0", help="conversion time, e.g. 3.24, 1T0, 103ns")
        p.add_argument("--squeeze", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsc-sta", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one conversion and write its time series")
    _add_common(p)
    _add_protocol(p, single=True)

    p = sub.add_parser("sweep", help="cartesian sweep over conversion times and squeeze values")
    _add_common(p)
    _add_protocol(p, single=False)
    p.add_argument("--tau-list", default="1T0", help="comma-separated conversion times")
    p.add_argument("--squeeze-list", default="0", help="comma-separated squeeze values")
    p.add_argument("--workers", type=int, default=None, help="parallel runs (default: CPU count)")

    p = sub.add_parser("find-t0", help="minimal conversion time under the amplitude cap")
    _add_common(p)
    p.add_argument("--tol", type=float, default=1e-4, help="bracket width in units of 1/g0")
    p.add_argument("--cap", type=float, default=1.0, help="allowed peak as a multiple of g0")

    p = sub.add_parser("find-max-squeeze", help="largest feasible squeeze parameter at a given time")
    _add_common(p)
    p.add_argument("--tau", required=False, default=None, help="conversion time, e.g. 1T0")
    p.add_argument("--tol", type=float, default=1e-3)

    p = sub.add_parser("reproduce-paper", help="run the benchmark reproduction checks")
    p.add_argument("--list", action="store_true", help="list the checks without running them")
    p.add_argument("--debug-zero-gx", action="store_true", help="drop g_x from dressed pulses (negative control)")
    return parser


def _parse(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            config = read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(config) - known
        if unknown:
            parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
        sub.set_defaults(**config)
        args = parser.parse_args(argv)
    return args


def _t0(args) -> float:
    return find_minimal_time(1.0) if args.t0 == "search" else BENCHMARK_T0


def _spec(args, tau: float, squeeze: float) -> ProtocolSpec:
    pulse = PulseParams(
        tau=tau,
        squeeze=squeeze,
        variant=Variant(args.variant),
        direction=Direction(args.direction),
        zero_gx=args.debug_zero_gx,
    )
    return ProtocolSpec(pulse=pulse, rates=parse_rates(args.rates), samples_per_tau=args.samples)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def _summary_line(result: SimulationResult, units: Units) -> str:
    s = result.summary()
    s["tau"] = float(units.time(s["tau"]))
    for k in ("peak_g1_mod", "peak_g2_mod"):
        s[k] = float(units.coupling(s[k]))
    return " ".join(f"{k}={_fmt(v)}" for k, v in s.items())


def _metadata(args, units: Units, **extra) -> dict:
    meta = {
        "command": args.command,
        "units": "si" if units.si else "dimensionless",
        "time_unit": units.time_label,
        "coupling_unit": units.coupling_label,
    }
    if units.si:
        meta["g0_mhz"] = units.g0_mhz
    meta.update(extra)
    return meta


def _write(path: str, fmt: str, meta: dict, columns: list[str], rows: list[list], summary: dict | None = None) -> None:
    if fmt == "json":
        doc = {"metadata": meta, "rows": [dict(zip(columns, r)) for r in rows]}
        if summary is not None:
            doc["summary"] = summary
        text = json.dumps(doc, default=_json_default) + "\n"
    else:
        buf = io.StringIO()
        buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = buf.getvalue()
    Path(path).write_text(text)


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(type(o))


def _time_series_rows(result: SimulationResult, units: Units) -> list[list]:
    pops = result.trajectory.populations
    cols = [
        units.time(result.times),
        units.coupling(result.g1),
        units.coupling(result.g2),
        units.coupling(result.g1_mod),
        units.coupling(result.g2_mod),
        pops[:, 0], pops[:, 1], pops[:, 2], pops[:, 3],
        result.fidelity_trace,
    ]
    return [[float(c[i]) for c in cols] for i in range(len(result.times))]


def cmd_simulate(args) -> int:
    units = Units(args.units, args.g0)
    tau = parse_tau(args.tau, _t0(args), units)
    result = run_conversion(_spec(args, tau, args.squeeze))
    if args.out:
        meta = _metadata(args, units, variant=args.variant, direction=args.direction,
                         tau=_fmt(units.time(tau)), squeeze=args.squeeze, rates=args.rates, samples=args.samples)
        summary = {k: v for k, v in result.summary().items()}
        _write(args.out, args.format, meta, CSV_COLUMNS, _time_series_rows(result, units), summary)
    print(_summary_line(result, units))
    return EXIT_OK


def cmd_sweep(args) -> int:
    units = Units(args.units, args.g0)
    t0 = _t0(args)
    taus = [parse_tau(s, t0, units) for s in parse_list(args.tau_list)]
    try:
        squeezes = [float(s) for s in parse_list(args.squeeze_list)]
    except ValueError as exc:
        raise InvalidArgumentError(f"bad --squeeze-list: {exc}") from exc
    if not taus or not squeezes:
        raise InvalidArgumentError("sweep ranges must be non-empty")
    points = sorted(itertools.product(taus, squeezes))
    specs = [_spec(args, tau, a) for tau, a in points]
    workers = args.workers or os.cpu_count() or 1
    results = run_many(specs, workers=workers)
    rows = []
    for r in results:
        s = r.summary()
        rows.append([
            float(units.time(s["tau"])), s["squeeze"], s["fidelity"], s["peak_P_bm"],
            float(units.coupling(s["peak_g1_mod"])), float(units.coupling(s["peak_g2_mod"])), s["feasible"],
        ])
        print(_summary_line(r, units))
    if args.out:
        meta = _metadata(args, units, variant=args.variant, direction=args.direction, rates=args.rates,
                         samples=args.samples)
        _write(args.out, args.format, meta, SWEEP_COLUMNS, rows)
    return EXIT_OK


def cmd_find_t0(args) -> int:
    units = Units(args.units, args.g0)
    tau = find_minimal_time(1.0, args.tol, cap=args.cap)
    report = constraint_report(PulseParams(tau=tau, variant=Variant.DRESSED), cap=args.cap)
    si_ns = tau / (2 * math.pi * args.g0 * 1e6) * 1e9
    print(f"tau_min={_fmt(tau)} [1/g0] tau_min_si={_fmt(si_ns)} [ns at g0=2pi*{_fmt(args.g0)} MHz] "
          f"peak_g1={_fmt(report.peak_g1)} peak_g2={_fmt(report.peak_g2)} binding={_fmt(report.binding)}")
    if args.out:
        _emit_report(args, units, report)
    return EXIT_OK


def cmd_find_max_squeeze(args) -> int:
    units = Units(args.units, args.g0)
    if args.tau is None:
        raise InvalidArgumentError("--tau is required")
    tau = parse_tau(args.tau, _t0(args), units)
    a_max = find_max_squeeze(tau, args.tol)
    report = constraint_report(PulseParams(tau=tau, squeeze=a_max, variant=Variant.DRESSED))
    print(f"squeeze_max={_fmt(a_max)} tau={_fmt(units.time(tau))} [{units.time_label}] "
          f"binding_coupling={report.binding_coupling} peak_g1={_fmt(report.peak_g1)} peak_g2={_fmt(report.peak_g2)}")
    if args.out:
        _emit_report(args, units, report)
    return EXIT_OK


def _emit_report(args, units: Units, report) -> None:
    d = report.to_dict()
    d["tau"] = float(units.time(d["tau"]))
    meta = _metadata(args, units)
    cols = list(d)
    _write(args.out, args.format, meta, cols, [[d[c] for c in cols]])


def cmd_reproduce_paper(args) -> int:
    if args.list:
        for item in acceptance.ITEMS:
            print(f"#{item.criterion:<2} {item.key:<20} expected {item.expected}  ({item.description})")
        return EXIT_OK
    outcomes = acceptance.run_all(acceptance.Harness(zero_gx=args.debug_zero_gx))
    failed = sum(not o.passed for _, o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_ACCEPTANCE


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "find-t0": cmd_find_t0,
    "find-max-squeeze": cmd_find_max_squeeze,
    "reproduce-paper": cmd_reproduce_paper,
}


def main(argv=None) -> int:
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
