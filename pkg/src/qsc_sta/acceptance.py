"""Reproduction checks for the published benchmark numbers.

Each :class:`Item` measures one quantity and compares it with its expected
value at a fixed tolerance. :class:`Harness` caches simulation runs so the
hygiene check can inspect every trajectory produced by the other items.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import model
from .dynamics import DecayRates, convergence_factor, pure_density
from .model import Basis
from .protocols import BENCHMARK_T0, ProtocolSpec, SimulationResult, assemble_protocol, predicted_intermediate_population, run_conversion
from .pulses import PulseParams, Variant, dressed_frame_check
from .search import find_max_squeeze, find_minimal_time

BENCHMARK_RATES = DecayRates.benchmark()
NO_DECAY = DecayRates()


@dataclass(frozen=True)
class Outcome:
    measured: float
    passed: bool


@dataclass(frozen=True)
class Item:
    key: str
    criterion: int
    description: str
    expected: str
    measure: Callable[["Harness"], Outcome]


def within(value: float, expected: float, tol: float) -> Outcome:
    return Outcome(float(value), bool(abs(value - expected) <= tol))


def below(value: float, bound: float) -> Outcome:
    return Outcome(float(value), bool(value < bound))


class Harness:
    """Runs and caches the conversions needed by the acceptance items.

    ``zero_gx`` drops the ``g_x`` control from every dressed pulse, as a
    negative control that should make the dressed items fail.
    """

    def __init__(self, zero_gx: bool = False):
        self.zero_gx = zero_gx
        self._runs: dict[tuple, SimulationResult] = {}

    def pulse(self, variant: Variant, tau_t0: float, squeeze: float = 0.0) -> PulseParams:
        return PulseParams(tau=tau_t0 * BENCHMARK_T0, squeeze=squeeze, variant=variant, zero_gx=self.zero_gx)

    def run(self, variant: Variant, tau_t0: float, squeeze: float = 0.0, rates: DecayRates = BENCHMARK_RATES,
            open_system: bool = True) -> SimulationResult:
        key = (variant, tau_t0, squeeze, rates, open_system)
        if key not in self._runs:
            spec = ProtocolSpec(pulse=self.pulse(variant, tau_t0, squeeze), rates=rates, open_system=open_system)
            self._runs[key] = run_conversion(spec)
        return self._runs[key]

    def open_runs(self) -> list[SimulationResult]:
        return [r for r in self._runs.values() if r.spec.open_system]


def _fid(variant, tau_t0, squeeze, rates, expected, tol):
    return lambda h: within(h.run(variant, tau_t0, squeeze, rates).fidelity, expected, tol)


def _peak_pbm(squeeze, expected, tol):
    return lambda h: within(h.run(Variant.DRESSED, 1.0, squeeze).peak_mechanical, expected, tol)


def _closed_transfer(h: Harness) -> Outcome:
    worst = 0.0
    for variant in (Variant.DRESSED, Variant.SATD):
        for tau_t0 in (0.3, 1.0, 2.0):
            r = h.run(variant, tau_t0, rates=NO_DECAY, open_system=False)
            worst = max(worst, 1 - r.fidelity)
    return below(worst, 1e-6)


def _sin2mu_law(h: Harness) -> Outcome:
    worst = 0.0
    for squeeze in (0.0, 0.85):
        r = h.run(Variant.DRESSED, 1.0, squeeze, NO_DECAY, open_system=False)
        predicted = predicted_intermediate_population(r.spec.pulse, r.times)
        worst = max(worst, float(np.max(np.abs(r.trajectory.populations[:, Basis.MECHANICAL] - predicted))))
    return below(worst, 1e-5)


def _frame_residual(h: Harness) -> Outcome:
    worst = 0.0
    for squeeze in (0.0, 0.85):
        p = h.pulse(Variant.DRESSED, 1.0, squeeze)
        worst = max(worst, dressed_frame_check(p, np.linspace(0, p.tau, 1001)) / p.g0)
    return below(worst, 1e-6)


def _hygiene(h: Harness) -> Outcome:
    runs = h.open_runs()
    trace = max(r.trajectory.max_trace_drift for r in runs)
    herm = max(r.trajectory.max_hermiticity_drift for r in runs)
    eig = min(r.trajectory.min_eigenvalue for r in runs)
    ok = trace < 1e-8 and herm < 1e-10 and eig > -1e-9
    return Outcome(trace, bool(ok and runs))


def _rk4_order(h: Harness) -> Outcome:
    spec = ProtocolSpec(pulse=h.pulse(Variant.DRESSED, 1.0), rates=BENCHMARK_RATES)
    factor = convergence_factor(assemble_protocol(spec), pure_density(Basis.OPTICAL), BENCHMARK_RATES, spec.pulse.tau)
    return Outcome(factor, bool(12 <= factor <= 20))


def _algebra(h: Harness) -> Outcome:
    mx, my, mz = model.spin1_operators()
    worst = 0.0
    for a, b, c in ((mx, my, mz), (my, mz, mx), (mz, mx, my)):
        worst = max(worst, np.max(np.abs(a @ b - b @ a - 1j * c)))
    for theta in np.linspace(-np.pi, np.pi, 41):
        u = model.adiabatic_frame(theta)
        worst = max(worst, np.max(np.abs(u @ u.conj().T - np.eye(3))))
    rng = np.random.default_rng(7)
    for g1, g2 in rng.uniform(-3, 3, size=(50, 2)):
        es = model.eigensystem(g1, g2)
        hmat = model.build_h_int(g1, g2)
        vecs = es.vectors
        worst = max(worst, np.max(np.abs(hmat @ vecs - vecs * es.energies)) / es.g)
        worst = max(worst, np.max(np.abs(vecs.conj().T @ vecs - np.eye(3))))
    return below(worst, 1e-12)


ITEMS: list[Item] = [
    Item("t0", 1, "minimal time T0 (1/g0)", "3.24 +/- 0.05",
         lambda h: within(find_minimal_time(1.0), 3.24, 0.05)),
    Item("adiabatic-5T0", 2, "adiabatic, no decay, tau=5T0: fidelity", "0.984 +/- 0.003",
         _fid(Variant.ADIABATIC, 5.0, 0.0, NO_DECAY, 0.984, 0.003)),
    Item("adiabatic-8T0", 2, "adiabatic, no decay, tau=8T0: fidelity", "0.999 +/- 0.002",
         _fid(Variant.ADIABATIC, 8.0, 0.0, NO_DECAY, 0.999, 0.002)),
    Item("adiabatic-8T0-decay", 3, "adiabatic, benchmark rates, tau=8T0: fidelity", "0.7380 +/- 0.01",
         _fid(Variant.ADIABATIC, 8.0, 0.0, BENCHMARK_RATES, 0.7380, 0.01)),
    Item("dressed-T0", 4, "dressed, benchmark rates, tau=T0, A=0: fidelity", "0.9653 +/- 0.005",
         _fid(Variant.DRESSED, 1.0, 0.0, BENCHMARK_RATES, 0.9653, 0.005)),
    Item("dressed-T0-A085", 5, "dressed, benchmark rates, tau=T0, A=0.85: fidelity", "0.9645 +/- 0.005",
         _fid(Variant.DRESSED, 1.0, 0.85, BENCHMARK_RATES, 0.9645, 0.005)),
    Item("peak-bm-A085", 5, "dressed, benchmark rates, tau=T0, A=0.85: peak P_bm", "0.34 +/- 0.03",
         _peak_pbm(0.85, 0.34, 0.03)),
    Item("peak-bm-A0", 5, "dressed, benchmark rates, tau=T0, A=0: peak P_bm", "0.63 +/- 0.03",
         _peak_pbm(0.0, 0.63, 0.03)),
    Item("dressed-2T0", 6, "dressed, benchmark rates, tau=2T0, A=0: fidelity", "0.9286 +/- 0.005",
         _fid(Variant.DRESSED, 2.0, 0.0, BENCHMARK_RATES, 0.9286, 0.005)),
    Item("dressed-2T0-B069", 6, "dressed, benchmark rates, tau=2T0, B=0.69: fidelity", "0.9281 +/- 0.005",
         _fid(Variant.DRESSED, 2.0, 0.69, BENCHMARK_RATES, 0.9281, 0.005)),
    Item("max-squeeze-T0", 7, "largest feasible A at tau=T0", "0.85 +/- 0.02",
         lambda h: within(find_max_squeeze(BENCHMARK_T0), 0.85, 0.02)),
    Item("max-squeeze-2T0", 7, "largest feasible B at tau=2T0", "0.69 +/- 0.02",
         lambda h: within(find_max_squeeze(2 * BENCHMARK_T0), 0.69, 0.02)),
    Item("closed-transfer", 8, "closed system, dressed+SATD, tau in {0.3,1,2}T0: max infidelity", "< 1e-6",
         _closed_transfer),
    Item("sin2mu-law", 8, "closed system, dressed: max |P_bm - sin^2 mu|", "< 1e-5", _sin2mu_law),
    Item("frame-residual", 8, "dressed frame residual / g0, A in {0, 0.85}", "< 1e-6", _frame_residual),
    Item("hygiene", 9, "open runs: trace drift (also Hermiticity < 1e-10, min eig > -1e-9)", "< 1e-8", _hygiene),
    Item("rk4-order", 9, "RK4 final-state error ratio on halved step", "in [12, 20]", _rk4_order),
    Item("algebra", 10, "spin-1 commutators, U unitarity, eigen residuals", "< 1e-12", _algebra),
]

ITEMS_BY_KEY = {item.key: item for item in ITEMS}


def format_line(item: Item, outcome: Outcome) -> str:
    verdict = "PASS" if outcome.passed else "FAIL"
    return f"[{verdict}] #{item.criterion:<2} {item.key:<20} measured={outcome.measured:.6g} expected {item.expected}  ({item.description})"


def run_all(harness: Harness | None = None, echo: Callable[[str], None] | None = print) -> list[tuple[Item, Outcome]]:
    """Evaluate every item in order. The hygiene item runs after all simulation items."""
    harness = harness or Harness()
    out = []
    for item in ITEMS:
        outcome = item.measure(harness)
        if echo:
            echo(format_line(item, outcome))
        out.append((item, outcome))
    return out
