"""Pulse shapes, mixing-angle calculus and dressed-state control synthesis.

The vanilla pulse family is ``g1 = g0 sin^2(pi t / 2 tau)``,
``g2 = g0 cos^2(pi t / 2 tau)``. Every derivative used on the production path
is a closed-form expression; finite differences appear only in tests and in
:func:`dressed_frame_check`.

All sampling functions accept a scalar time or an array of times.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from . import model
from .errors import InvalidArgumentError, OutOfRangeError


class Direction(enum.Enum):
    FORWARD = "a1-to-a2"
    REVERSE = "a2-to-a1"


class Variant(enum.Enum):
    ADIABATIC = "adiabatic"
    SATD = "satd"
    DRESSED = "dressed"


@dataclass(frozen=True)
class PulseParams:
    """Parameters of one conversion pulse.

    ``zero_gx`` deliberately drops the ``g_x`` control; it exists only as a
    negative control for the verification harness.
    """

    g0: float = 1.0
    tau: float = 3.24
    squeeze: float = 0.0
    direction: Direction = Direction.FORWARD
    variant: Variant = Variant.DRESSED
    zero_gx: bool = False

    def __post_init__(self):
        for name in ("g0", "tau", "squeeze"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")
        if self.g0 <= 0:
            raise InvalidArgumentError(f"g0 must be positive, got {self.g0}")
        if self.tau <= 0:
            raise InvalidArgumentError(f"tau must be positive, got {self.tau}")
        if self.squeeze < 0:
            raise InvalidArgumentError(f"squeeze must be >= 0, got {self.squeeze}")

    def with_(self, **changes) -> "PulseParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class CouplingSample:
    t: np.ndarray | float
    g1: np.ndarray | float
    g2: np.ndarray | float
    g: np.ndarray | float
    theta: np.ndarray | float
    theta_dot: np.ndarray | float


@dataclass(frozen=True)
class ControlFields:
    mu: np.ndarray | float
    mu_dot: np.ndarray | float
    gx: np.ndarray | float
    gz: np.ndarray | float
    f: np.ndarray | float


@dataclass(frozen=True)
class ModifiedCouplings:
    t: np.ndarray | float
    g1: np.ndarray | float
    g2: np.ndarray | float


def _check_time(params: PulseParams, t) -> None:
    t = np.asarray(t)
    if not np.all(np.isfinite(t)) or np.any(t < 0) or np.any(t > params.tau):
        raise OutOfRangeError(f"t must lie in [0, tau={params.tau}]")


def _squash(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


class _Kinematics:
    """Closed forms of g, theta and their first two derivatives at times ``t``.

    With ``x = pi t / 2 tau`` and ``w = pi / 2 tau`` the forward family has
    ``g = g0 sqrt(D)``, ``D = sin^4 x + cos^4 x = 1 - sin^2(2x) / 2`` and
    ``theta_dot = w sin(2x) / D``. The reverse family swaps ``g1`` and
    ``g2``, which flips the sign of every theta derivative.
    """

    def __init__(self, params: PulseParams, t):
        t = np.asarray(t, dtype=float)
        w = np.pi / (2 * params.tau)
        x = w * t
        s, c = np.sin(x), np.cos(x)
        s2x, c2x, s4x = np.sin(2 * x), np.cos(2 * x), np.sin(4 * x)
        d = 1 - 0.5 * s2x**2
        d_dot = -w * s4x
        sign = 1.0 if params.direction is Direction.FORWARD else -1.0

        g1, g2 = params.g0 * s**2, params.g0 * c**2
        if sign < 0:
            g1, g2 = g2, g1
        self.t = t
        self.g1, self.g2 = g1, g2
        self.g = params.g0 * np.sqrt(d)
        self.g_dot = params.g0 * d_dot / (2 * np.sqrt(d))
        self.theta = model.mixing_angle(g1, g2)
        self.theta_dot = sign * w * s2x / d
        self.theta_ddot = sign * w**2 * (2 * c2x * d + s2x * s4x) / d**2

        a = params.squeeze
        self.f = 1 + a * s2x**4
        self.f_dot = 8 * a * w * s2x**3 * c2x


def _sample(params: PulseParams, t) -> CouplingSample:
    k = _Kinematics(params, t)
    return CouplingSample(
        t=_squash(k.t),
        g1=_squash(k.g1),
        g2=_squash(k.g2),
        g=_squash(k.g),
        theta=_squash(k.theta),
        theta_dot=_squash(k.theta_dot),
    )


def base_couplings(params: PulseParams, t) -> CouplingSample:
    """Vanilla couplings with ``g``, ``theta`` and the analytic ``theta_dot``."""
    _check_time(params, t)
    return _sample(params, t)


def auxiliary_f(squeeze: float, tau: float, t):
    """``1 + A sin^4(pi t / tau)``."""
    if squeeze < 0:
        raise InvalidArgumentError("squeeze must be >= 0")
    return 1 + squeeze * np.sin(np.pi * np.asarray(t, dtype=float) / tau) ** 4


def _controls(params: PulseParams, t) -> tuple[_Kinematics, ControlFields]:
    k = _Kinematics(params, t)
    fg = k.f * k.g
    q = k.theta_dot / fg
    # d/dt [theta_dot / (f g)]
    q_dot = (k.theta_ddot * fg - k.theta_dot * (k.f_dot * k.g + k.f * k.g_dot)) / fg**2
    mu = np.arctan(q)
    mu_dot = q_dot / (1 + q**2)
    gx = np.zeros_like(mu_dot) if params.zero_gx else mu_dot
    # theta_dot / tan(mu) == f g exactly, so g_z = -g + f g has no singularity at the endpoints
    gz = (k.f - 1) * k.g
    return k, ControlFields(mu=mu, mu_dot=mu_dot, gx=gx, gz=gz, f=k.f)


def control_fields(params: PulseParams, t) -> ControlFields:
    """Dressed-frame controls: ``mu = arctan(theta_dot / (f g))``, ``g_x = mu_dot``, ``g_z = (f - 1) g``."""
    _check_time(params, t)
    _, cf = _controls(params, t)
    return ControlFields(**{name: _squash(getattr(cf, name)) for name in cf.__dataclass_fields__})


def _modified(params: PulseParams, t) -> tuple[np.ndarray, np.ndarray]:
    if params.variant is not Variant.DRESSED:
        k = _Kinematics(params, t)
        return k.g1, k.g2
    k, cf = _controls(params, t)
    s, c = np.sin(k.theta), np.cos(k.theta)
    amp = k.g + cf.gz
    return amp * s + cf.gx * c, amp * c - cf.gx * s


def modified_couplings(params: PulseParams, t) -> ModifiedCouplings:
    """Couplings actually applied by the protocol.

    Dressed variant: ``g1~ = (g + g_z) sin(theta) + g_x cos(theta)`` and
    ``g2~ = (g + g_z) cos(theta) - g_x sin(theta)``. The adiabatic and SATD
    variants apply the vanilla couplings (SATD adds a separate a1-a2 term).
    """
    _check_time(params, t)
    g1, g2 = _modified(params, t)
    return ModifiedCouplings(t=_squash(np.asarray(t, dtype=float)), g1=_squash(g1), g2=_squash(g2))


def satd_correction(params: PulseParams, t) -> np.ndarray:
    """Transitionless-driving term: ``+i theta_dot`` at (a1, a2), ``-i theta_dot`` at (a2, a1)."""
    _check_time(params, t)
    return _satd(params, t)


def _satd(params: PulseParams, t) -> np.ndarray:
    thd = _Kinematics(params, t).theta_dot
    h = np.zeros(np.shape(thd) + (3, 3), dtype=complex)
    h[..., 0, 2] = 1j * thd
    h[..., 2, 0] = -1j * thd
    return h


def _h_int_stack(g1, g2) -> np.ndarray:
    g1, g2 = np.broadcast_arrays(np.asarray(g1, dtype=float), np.asarray(g2, dtype=float))
    h = np.zeros(g1.shape + (3, 3), dtype=complex)
    h[..., 0, 1] = h[..., 1, 0] = g1
    h[..., 1, 2] = h[..., 2, 1] = g2
    return h


def dressed_hamiltonian(params: PulseParams, t) -> np.ndarray:
    """``build_h_int(g1~, g2~)``: no direct a1-a2 coupling at any time."""
    _check_time(params, t)
    g1, g2 = _modified(params.with_(variant=Variant.DRESSED), t)
    return _h_int_stack(g1, g2)


def dressed_frame_check(params: PulseParams, grid) -> float:
    """Largest coupling between the dressed dark state and the other dressed states.

    Assembles ``V H_ad V^+ + V (g_x M_x + g_z M_z) V^+ + i (dV/dt) V^+`` with
    ``V = exp(i mu M_x)`` and ``dV/dt`` from central differences
    (step ``1e-6 tau``), and returns the maximum of ``|H[d, +]|, |H[d, -]|``
    over ``grid``. The result is an absolute angular frequency.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 100:
        raise InvalidArgumentError("dressed_frame_check needs a grid of at least 100 times")
    _check_time(params, grid)
    params = params.with_(variant=Variant.DRESSED)
    k, cf = _controls(params, grid)
    h = 1e-6 * params.tau
    _, cf_lo = _controls(params, grid - h)
    _, cf_hi = _controls(params, grid + h)

    v = model.dressed_frame(cf.mu)
    v_dot = (model.dressed_frame(cf_hi.mu) - model.dressed_frame(cf_lo.mu)) / (2 * h)
    vh = np.conj(np.swapaxes(v, -1, -2))
    h_ad = model.adiabatic_hamiltonian(k.g, k.theta_dot)
    h_c = cf.gx[..., None, None] * model.MX + cf.gz[..., None, None] * model.MZ
    h_m = v @ (h_ad + h_c) @ vh + 1j * v_dot @ vh
    return float(np.max(np.abs(h_m[:, 1, [0, 2]])))
