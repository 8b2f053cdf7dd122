"""Closed- and open-system time evolution with fixed-step RK4.

Open-system states are 4x4 density matrices on ``{vacuum, a1, b_m, a2}``;
decay of mode ``k`` is the jump ``|vac><k|`` (zero-temperature, single
excitation). The generator is

    d rho/dt = -i[H, rho] + sum_k (rate_k / 2) (2 A rho A^+ - A^+ A rho - rho A^+ A)

so population in mode ``k`` decays at ``rate_k``.

Hamiltonian maps passed to the integrators take an array of times and return
a stack of matrices, so a whole grid is evaluated in one call.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import IntegrationDivergedError, InvalidArgumentError
from .model import Basis

HamiltonianMap = Callable[[np.ndarray], np.ndarray]

DIVERGENCE_LIMIT = 1e-6


@dataclass(frozen=True)
class DecayRates:
    """Energy-decay rates (angular frequency) of the optical, microwave and mechanical modes."""

    gamma1: float = 0.0
    gamma2: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "kappa"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise InvalidArgumentError(f"{name} must be finite and >= 0, got {v}")

    @classmethod
    def benchmark(cls, g0: float = 1.0) -> "DecayRates":
        """``gamma1 = g0/50``, ``gamma2 = kappa = g0/1000``."""
        return cls(gamma1=g0 / 50, gamma2=g0 / 1000, kappa=g0 / 1000)

    @property
    def is_zero(self) -> bool:
        return self.gamma1 == 0 and self.gamma2 == 0 and self.kappa == 0

    def by_mode(self) -> dict[Basis, float]:
        return {Basis.OPTICAL: self.gamma1, Basis.MECHANICAL: self.kappa, Basis.MICROWAVE: self.gamma2}


def jump_operator(mode: Basis) -> np.ndarray:
    a = np.zeros((4, 4), dtype=complex)
    a[Basis.VACUUM, mode] = 1.0
    return a


def lindblad_rhs(rho: np.ndarray, h: np.ndarray, rates: DecayRates) -> np.ndarray:
    if np.shape(rho) != (4, 4) or np.shape(h) != (4, 4):
        raise InvalidArgumentError(f"expected 4x4 rho and H, got {np.shape(rho)} and {np.shape(h)}")
    out = -1j * (h @ rho - rho @ h)
    # for A = |vac><k|: 2 A rho A^+ = 2 rho_kk |vac><vac|, A^+A = |k><k|
    for k, rate in rates.by_mode().items():
        if rate == 0:
            continue
        half = 0.5 * rate
        out[0, 0] += rate * rho[k, k]
        out[k, :] -= half * rho[k, :]
        out[:, k] -= half * rho[:, k]
    return out


def pure_density(index: int, dim: int = 4) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


@dataclass
class Trajectory:
    """Sampled evolution on a monotone time grid.

    ``populations`` has shape ``(len(times), 4)`` with columns
    ``(P_vac, P_a1, P_bm, P_a2)``. The ``max_*`` and ``min_eigenvalue``
    fields record numerical hygiene over all samples.
    """

    times: np.ndarray
    populations: np.ndarray
    final_state: np.ndarray
    max_trace_drift: float = 0.0
    max_hermiticity_drift: float = 0.0
    min_eigenvalue: float = 0.0
    max_norm_drift: float = 0.0
    open_system: bool = True
    states: np.ndarray | None = field(default=None, repr=False)

    def fidelity_trace(self, target: Basis) -> np.ndarray:
        return self.populations[:, int(target)]

    def final_fidelity(self, target: Basis) -> float:
        return fidelity(self.final_state, target)


def _check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or not np.all(np.diff(grid) > 0):
        raise InvalidArgumentError("grid must be a strictly increasing 1-D array with >= 2 points")
    return grid


def _stage_hamiltonians(hamiltonian: HamiltonianMap, grid: np.ndarray):
    mids = 0.5 * (grid[:-1] + grid[1:])
    h_nodes = np.asarray(hamiltonian(grid))
    h_mids = np.asarray(hamiltonian(mids))
    return h_nodes, h_mids


def integrate_density(
    hamiltonian: HamiltonianMap,
    rho0: np.ndarray,
    rates: DecayRates,
    grid,
    *,
    keep_states: bool = False,
) -> Trajectory:
    """Propagate ``rho0`` along ``grid`` with classic RK4. No renormalisation is applied."""
    grid = _check_grid(grid)
    rho = np.array(rho0, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidArgumentError(f"rho0 must be 4x4, got {rho.shape}")
    h_nodes, h_mids = _stage_hamiltonians(hamiltonian, grid)
    if h_nodes.shape[1:] != (4, 4):
        raise InvalidArgumentError("hamiltonian map must return 4x4 matrices")

    n = grid.size
    pops = np.empty((n, 4))
    states = np.empty((n, 4, 4), dtype=complex) if keep_states else None
    trace0 = np.trace(rho).real
    trace_drift = herm_drift = 0.0
    min_eig = np.inf

    def record(i, r):
        nonlocal trace_drift, herm_drift, min_eig
        pops[i] = np.diagonal(r).real
        trace_drift = max(trace_drift, abs(np.trace(r).real - trace0))
        herm_drift = max(herm_drift, float(np.max(np.abs(r - r.conj().T))))
        min_eig = min(min_eig, float(np.linalg.eigvalsh(0.5 * (r + r.conj().T))[0]))
        if states is not None:
            states[i] = r

    record(0, rho)
    for i in range(n - 1):
        dt = grid[i + 1] - grid[i]
        hm = h_mids[i]
        k1 = lindblad_rhs(rho, h_nodes[i], rates)
        k2 = lindblad_rhs(rho + 0.5 * dt * k1, hm, rates)
        k3 = lindblad_rhs(rho + 0.5 * dt * k2, hm, rates)
        k4 = lindblad_rhs(rho + dt * k3, h_nodes[i + 1], rates)
        rho = rho + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        record(i + 1, rho)
        # RK4 keeps the trace of a trace-preserving generator, so also watch the populations
        p = pops[i + 1]
        if (
            trace_drift > DIVERGENCE_LIMIT
            or not np.all(np.isfinite(rho))
            or p.min() < -DIVERGENCE_LIMIT
            or p.max() > 1 + DIVERGENCE_LIMIT
        ):
            raise IntegrationDivergedError(
                f"state left the physical region at t={grid[i + 1]:.6g} "
                f"(trace drift {trace_drift:.3e}); reduce the step size"
            )

    return Trajectory(
        times=grid,
        populations=pops,
        final_state=rho,
        max_trace_drift=trace_drift,
        max_hermiticity_drift=herm_drift,
        min_eigenvalue=min_eig,
        open_system=True,
        states=states,
    )


def integrate_state(
    hamiltonian: HamiltonianMap,
    psi0: np.ndarray,
    grid,
    *,
    keep_states: bool = False,
) -> Trajectory:
    """RK4 propagation of ``d psi/dt = -i H(t) psi`` on ``{a1, b_m, a2}``."""
    grid = _check_grid(grid)
    psi = np.array(psi0, dtype=complex)
    if psi.shape != (3,):
        raise InvalidArgumentError(f"psi0 must have 3 components, got {psi.shape}")
    if abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise InvalidArgumentError("psi0 must be normalised")
    h_nodes, h_mids = _stage_hamiltonians(hamiltonian, grid)
    if h_nodes.shape[1:] != (3, 3):
        raise InvalidArgumentError("hamiltonian map must return 3x3 matrices")
    # -iH once per stage rather than per multiply
    a_nodes, a_mids = -1j * h_nodes, -1j * h_mids

    n = grid.size
    pops = np.zeros((n, 4))
    states = np.empty((n, 3), dtype=complex) if keep_states else None
    pops[0, 1:] = np.abs(psi) ** 2
    if states is not None:
        states[0] = psi
    norm_drift = 0.0
    for i in range(n - 1):
        dt = grid[i + 1] - grid[i]
        am = a_mids[i]
        k1 = a_nodes[i] @ psi
        k2 = am @ (psi + 0.5 * dt * k1)
        k3 = am @ (psi + 0.5 * dt * k2)
        k4 = a_nodes[i + 1] @ (psi + dt * k3)
        psi = psi + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        p = np.abs(psi) ** 2
        pops[i + 1, 1:] = p
        if states is not None:
            states[i + 1] = psi
        norm_drift = max(norm_drift, abs(p.sum() - 1))
        if norm_drift > DIVERGENCE_LIMIT or not np.all(np.isfinite(psi)):
            raise IntegrationDivergedError(
                f"norm drift {norm_drift:.3e} at t={grid[i + 1]:.6g}; reduce the step size"
            )

    return Trajectory(
        times=grid,
        populations=pops,
        final_state=psi,
        max_norm_drift=norm_drift,
        open_system=False,
        states=states,
    )


def populations(state: np.ndarray) -> tuple[float, float, float, float]:
    """``(P_vac, P_a1, P_bm, P_a2)`` of a 4x4 density matrix or a 3-component state vector."""
    state = np.asarray(state)
    if state.shape == (4, 4):
        return tuple(float(x) for x in np.diagonal(state).real)
    if state.shape == (3,):
        p = np.abs(state) ** 2
        return (0.0, float(p[0]), float(p[1]), float(p[2]))
    raise InvalidArgumentError(f"unsupported state shape {state.shape}")


def fidelity(state: np.ndarray, target: Basis) -> float:
    """Population of the target mode; equals the state fidelity for a basis-state goal."""
    target = Basis(target)
    if target not in (Basis.OPTICAL, Basis.MICROWAVE):
        raise InvalidArgumentError("target must be the optical or microwave mode")
    return populations(state)[int(target)]


def convergence_factor(
    hamiltonian: HamiltonianMap,
    rho0: np.ndarray,
    rates: DecayRates,
    t_final: float,
    steps: int = 100,
) -> float:
    """Ratio of final-state errors (max-norm) at ``steps`` and ``2*steps`` RK4 steps.

    The reference is a run with ``16*steps`` steps. A fourth-order method
    gives a ratio close to 16.
    """

    def final(n):
        grid = np.linspace(0.0, t_final, n + 1)
        return integrate_density(hamiltonian, rho0, rates, grid).final_state

    ref = final(16 * steps)
    return float(np.max(np.abs(final(steps) - ref)) / np.max(np.abs(final(2 * steps) - ref)))
