"""Adiabatic, SATD and dressed conversion protocols and their summary statistics."""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import model
from .dynamics import DecayRates, Trajectory, integrate_density, integrate_state, pure_density
from .errors import InvalidArgumentError, InvalidCombinationError
from .model import Basis
from .pulses import Direction, PulseParams, Variant, _h_int_stack, _Kinematics, _modified, _satd, control_fields

#: Minimal conversion time quoted for the sin^2/cos^2 family, in units of 1/g0.
BENCHMARK_T0 = 3.24
#: Benchmark peak coupling, 2 pi x 5 MHz, in rad/s.
BENCHMARK_G0_SI = 2 * math.pi * 5e6

MIN_SAMPLES_PER_TAU = 4000


@dataclass(frozen=True)
class ProtocolSpec:
    """A single conversion run.

    ``initial``/``target`` default to the endpoints implied by
    ``pulse.direction``. ``open_system=False`` runs the 3-dimensional
    state-vector integrator and requires zero decay rates.
    """

    pulse: PulseParams = field(default_factory=PulseParams)
    rates: DecayRates = field(default_factory=DecayRates)
    initial: Basis | None = None
    target: Basis | None = None
    samples_per_tau: int = MIN_SAMPLES_PER_TAU
    open_system: bool = True

    def __post_init__(self):
        fwd = self.pulse.direction is Direction.FORWARD
        if self.initial is None:
            object.__setattr__(self, "initial", Basis.OPTICAL if fwd else Basis.MICROWAVE)
        if self.target is None:
            object.__setattr__(self, "target", Basis.MICROWAVE if fwd else Basis.OPTICAL)
        ends = (Basis.OPTICAL, Basis.MICROWAVE)
        if self.initial not in ends or self.target not in ends or self.initial == self.target:
            raise InvalidArgumentError("initial and target must be distinct cavity modes")
        if self.samples_per_tau < MIN_SAMPLES_PER_TAU:
            raise InvalidArgumentError(f"samples_per_tau must be >= {MIN_SAMPLES_PER_TAU}")
        if not self.open_system and not self.rates.is_zero:
            raise InvalidArgumentError("closed-system runs cannot include decay")

    def with_(self, **changes) -> "ProtocolSpec":
        return replace(self, **changes)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.pulse.tau, self.samples_per_tau + 1)


@dataclass
class SimulationResult:
    spec: ProtocolSpec
    trajectory: Trajectory
    g1: np.ndarray
    g2: np.ndarray
    g1_mod: np.ndarray
    g2_mod: np.ndarray
    wall_time: float = 0.0

    @property
    def times(self) -> np.ndarray:
        return self.trajectory.times

    @property
    def fidelity(self) -> float:
        return self.trajectory.final_fidelity(self.spec.target)

    @property
    def fidelity_trace(self) -> np.ndarray:
        return self.trajectory.fidelity_trace(self.spec.target)

    @property
    def peak_mechanical(self) -> float:
        return max_intermediate_population(self)

    @property
    def peak_g1_mod(self) -> float:
        return float(np.max(np.abs(self.g1_mod)))

    @property
    def peak_g2_mod(self) -> float:
        return float(np.max(np.abs(self.g2_mod)))

    @property
    def feasible(self) -> bool:
        """Whether the applied couplings stayed within ``g0`` on the run grid."""
        return max(self.peak_g1_mod, self.peak_g2_mod) <= self.spec.pulse.g0 * (1 + 1e-6)

    def summary(self) -> dict:
        p = self.spec.pulse
        return {
            "variant": p.variant.value,
            "direction": p.direction.value,
            "tau": p.tau,
            "squeeze": p.squeeze,
            "gamma1": self.spec.rates.gamma1,
            "gamma2": self.spec.rates.gamma2,
            "kappa": self.spec.rates.kappa,
            "fidelity": self.fidelity,
            "peak_P_bm": self.peak_mechanical,
            "peak_g1_mod": self.peak_g1_mod,
            "peak_g2_mod": self.peak_g2_mod,
            "feasible": self.feasible,
        }


def assemble_protocol(spec: ProtocolSpec):
    """Time-dependent Hamiltonian map ``t -> H(t)`` for the protocol's variant.

    Returns 4x4 matrices (zero vacuum row/column) for open-system specs and
    3x3 matrices otherwise. The map accepts scalar or array times.
    """
    p = spec.pulse
    if p.variant is Variant.SATD and p.squeeze != 0:
        raise InvalidCombinationError("the squeeze parameter applies only to the dressed protocol")

    def block(t):
        t = np.asarray(t, dtype=float)
        if p.variant is Variant.ADIABATIC:
            k = _Kinematics(p, t)
            return _h_int_stack(k.g1, k.g2)
        if p.variant is Variant.SATD:
            k = _Kinematics(p, t)
            return _h_int_stack(k.g1, k.g2) + _satd(p, t)
        return _h_int_stack(*_modified(p, t))

    if spec.open_system:
        return lambda t: model.embed(block(t))
    return block


def run_conversion(spec: ProtocolSpec, *, keep_states: bool = False) -> SimulationResult:
    start = time.perf_counter()
    ham = assemble_protocol(spec)
    grid = spec.grid
    if spec.open_system:
        traj = integrate_density(ham, pure_density(int(spec.initial)), spec.rates, grid, keep_states=keep_states)
    else:
        psi0 = np.zeros(3, dtype=complex)
        psi0[spec.initial.block_index] = 1.0
        traj = integrate_state(ham, psi0, grid, keep_states=keep_states)
    k = _Kinematics(spec.pulse, grid)
    g1_mod, g2_mod = _modified(spec.pulse, grid)
    return SimulationResult(
        spec=spec,
        trajectory=traj,
        g1=k.g1,
        g2=k.g2,
        g1_mod=np.asarray(g1_mod),
        g2_mod=np.asarray(g2_mod),
        wall_time=time.perf_counter() - start,
    )


def max_intermediate_population(result: SimulationResult) -> float:
    pops = result.trajectory.populations
    if pops.shape[0] < MIN_SAMPLES_PER_TAU:
        raise InvalidArgumentError(f"need at least {MIN_SAMPLES_PER_TAU} samples")
    return float(np.max(pops[:, Basis.MECHANICAL]))


def predicted_intermediate_population(params: PulseParams, t):
    """Closed-system mechanical population of the dressed protocol, ``sin^2 mu(t)``."""
    if params.variant is not Variant.DRESSED:
        raise InvalidArgumentError("the sin^2(mu) law holds only for the dressed protocol")
    return np.sin(control_fields(params, t).mu) ** 2


def run_many(specs, workers: int | None = None) -> list[SimulationResult]:
    """Run independent specs concurrently; results keep the input order."""
    specs = list(specs)
    if not specs:
        return []
    if workers == 1 or len(specs) == 1:
        return [run_conversion(s) for s in specs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_conversion, specs))


def sweep_squeeze(spec: ProtocolSpec, squeezes, workers: int | None = None) -> list[SimulationResult]:
    """One run per squeeze value. Infeasible values are still run; check ``result.feasible``."""
    return run_many([spec.with_(pulse=spec.pulse.with_(squeeze=float(a))) for a in squeezes], workers)
