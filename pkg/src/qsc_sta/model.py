"""Single-excitation model of the optical/mechanical/microwave three-mode system.

Basis conventions
-----------------
Open-system objects live on the 4-dimensional space
``{vacuum, a1 (optical), b_m (mechanical), a2 (microwave)}``; closed-system
objects use only the single-excitation block ``{a1, b_m, a2}`` (indices 1..3
of the full basis, 0..2 of the block).

The adiabatic basis is ordered ``{|+>, |d>, |->}`` so that the spin-1
operator ``M_z`` is ``diag(1, 0, -1)``.

All couplings are angular frequencies; time derivatives of angles are in
rad per unit time.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCouplingError, InvalidArgumentError

SQRT2 = math.sqrt(2.0)


class Basis(enum.IntEnum):
    VACUUM = 0
    OPTICAL = 1
    MECHANICAL = 2
    MICROWAVE = 3

    @property
    def block_index(self) -> int:
        """Index inside the 3-dimensional single-excitation block."""
        if self is Basis.VACUUM:
            raise InvalidArgumentError("vacuum is not part of the single-excitation block")
        return int(self) - 1


def _check_finite(*values: float) -> None:
    for v in values:
        if not np.all(np.isfinite(v)):
            raise InvalidArgumentError(f"non-finite input: {v!r}")


def build_h_int(g1: float, g2: float) -> np.ndarray:
    """Interaction-picture Hamiltonian on ``{a1, b_m, a2}``.

    ``g1`` couples a1 <-> b_m and ``g2`` couples b_m <-> a2. Either may be
    negative (modified couplings change sign mid-pulse).
    """
    _check_finite(g1, g2)
    h = np.zeros((3, 3), dtype=complex)
    h[0, 1] = h[1, 0] = g1
    h[1, 2] = h[2, 1] = g2
    return h


def embed(block: np.ndarray) -> np.ndarray:
    """Embed 3x3 matrices (or a stack of them) into the 4x4 space with a zero vacuum row/column."""
    block = np.asarray(block)
    out = np.zeros(block.shape[:-2] + (4, 4), dtype=complex)
    out[..., 1:, 1:] = block
    return out


def mixing_angle(g1, g2):
    """``theta = atan2(g1, g2)``; handles ``g2 = 0`` without division."""
    return np.arctan2(g1, g2)


@dataclass(frozen=True)
class Eigensystem:
    """Instantaneous eigensystem of :func:`build_h_int`.

    ``energies`` is ordered ``(E_-, E_d, E_+) = (-g, 0, g)`` and matches
    ``minus``, ``dark``, ``plus``.
    """

    theta: float
    g: float
    energies: np.ndarray
    minus: np.ndarray
    dark: np.ndarray
    plus: np.ndarray

    @property
    def vectors(self) -> np.ndarray:
        """Columns ``|->, |d>, |+>``."""
        return np.column_stack([self.minus, self.dark, self.plus])


def eigensystem(g1: float, g2: float) -> Eigensystem:
    _check_finite(g1, g2)
    if g1 == 0 and g2 == 0:
        raise DegenerateCouplingError("g1 = g2 = 0: mixing angle undefined")
    g = math.hypot(g1, g2)
    theta = math.atan2(g1, g2)
    s, c = math.sin(theta), math.cos(theta)
    dark = np.array([-c, 0.0, s], dtype=complex)
    plus = np.array([s, 1.0, c], dtype=complex) / SQRT2
    minus = np.array([s, -1.0, c], dtype=complex) / SQRT2
    return Eigensystem(
        theta=theta,
        g=g,
        energies=np.array([-g, 0.0, g]),
        minus=minus,
        dark=dark,
        plus=plus,
    )


def adiabatic_frame(theta) -> np.ndarray:
    """Frame unitary ``U(theta)``; its rows are ``<+|, <d|, <-|`` in ``{a1, b_m, a2}``.

    Accepts an array of angles and returns a stack of matrices.
    """
    _check_finite(theta)
    theta = np.asarray(theta, dtype=float)
    s, c = np.sin(theta), np.cos(theta)
    u = np.zeros(theta.shape + (3, 3), dtype=complex)
    u[..., 0, 0] = s / SQRT2
    u[..., 0, 1] = 1 / SQRT2
    u[..., 0, 2] = c / SQRT2
    u[..., 1, 0] = -c
    u[..., 1, 2] = s
    u[..., 2, 0] = s / SQRT2
    u[..., 2, 1] = -1 / SQRT2
    u[..., 2, 2] = c / SQRT2
    return u


def _spin1() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    plus, dark, minus = np.eye(3, dtype=complex)
    mx = np.outer(minus - plus, dark) / SQRT2
    mx = mx + mx.conj().T
    my = 1j * np.outer(plus + minus, dark) / SQRT2
    my = my + my.conj().T
    mz = np.outer(plus, plus) - np.outer(minus, minus)
    for m in (mx, my, mz):
        m.setflags(write=False)
    return mx, my, mz


MX, MY, MZ = _spin1()


def spin1_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(M_x, M_y, M_z)`` in the ``{|+>, |d>, |->}`` ordering (read-only arrays)."""
    return MX, MY, MZ


def adiabatic_hamiltonian(g, theta_dot) -> np.ndarray:
    """``g M_z - theta_dot M_y``: the interaction Hamiltonian seen from the adiabatic frame."""
    _check_finite(g, theta_dot)
    g = np.asarray(g, dtype=float)[..., None, None]
    theta_dot = np.asarray(theta_dot, dtype=float)[..., None, None]
    return g * MZ - theta_dot * MY


def dressed_frame(mu) -> np.ndarray:
    """``V = exp(i mu M_x)``, evaluated through the spectral decomposition of ``M_x``."""
    mu = np.asarray(mu, dtype=float)
    w, vecs = _MX_EIG
    phases = np.exp(1j * mu[..., None] * w)
    return np.einsum("ij,...j,kj->...ik", vecs, phases, vecs.conj())


_MX_EIG = np.linalg.eigh(MX)
