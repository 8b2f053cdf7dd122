"""Searches driven by the amplitude rule ``max |g_i~(t)| <= g0``.

* :func:`find_minimal_time` - shortest conversion time with unsqueezed controls.
* :func:`find_max_squeeze` - largest squeeze parameter at a given time.

Both bisect a monotone peak-amplitude function and always return the
feasible end of the final bracket.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import BracketError, InfeasibleTimeError, InvalidArgumentError
from .pulses import PulseParams, Variant, _modified

GRID_POINTS = 10_000
FEASIBILITY_RTOL = 1e-6
BINDING_RTOL = 1e-3


@dataclass(frozen=True)
class ConstraintReport:
    tau: float
    squeeze: float
    g0: float
    peak_g1: float
    peak_g2: float
    cap: float = 1.0

    @property
    def peak(self) -> float:
        return max(self.peak_g1, self.peak_g2)

    @property
    def feasible(self) -> bool:
        return self.peak <= self.cap * self.g0 * (1 + FEASIBILITY_RTOL)

    @property
    def binding(self) -> bool:
        return abs(self.peak - self.cap * self.g0) <= BINDING_RTOL * self.g0

    @property
    def binding_coupling(self) -> str:
        return "g1" if self.peak_g1 >= self.peak_g2 else "g2"

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(feasible=self.feasible, binding=self.binding, binding_coupling=self.binding_coupling)
        return d


def _refined_max(fn, grid: np.ndarray, values: np.ndarray, xatol: float) -> float:
    i = int(np.argmax(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(lambda t: -fn(t), bounds=(lo, hi), method="bounded", options={"xatol": xatol})
    return max(float(values[i]), -float(res.fun))


def peak_modified_amplitude(params: PulseParams, *, phase: float = 0.0) -> tuple[float, float]:
    """Peaks of ``|g1~(t)|`` and ``|g2~(t)|`` over ``[0, tau]``.

    A uniform grid of 10^4 points locates each maximum, then a bounded scalar
    search between the neighbouring grid points refines it to ``1e-6 tau``.
    ``phase`` (in units of one grid step) shifts the interior grid points.
    """
    tau = params.tau
    grid = np.linspace(0.0, tau, GRID_POINTS)
    if phase:
        step = grid[1]
        grid = np.concatenate([[0.0], np.arange(GRID_POINTS - 1) * step + phase * step, [tau]])
        grid = np.unique(np.clip(grid, 0.0, tau))
    g1, g2 = (np.abs(x) for x in _modified(params, grid))
    peaks = []
    for idx, vals in enumerate((g1, g2)):
        fn = lambda t, idx=idx: abs(float(_modified(params, t)[idx]))  # noqa: E731
        peaks.append(_refined_max(fn, grid, vals, 1e-6 * tau))
    return peaks[0], peaks[1]


def constraint_report(params: PulseParams, cap: float = 1.0) -> ConstraintReport:
    p1, p2 = peak_modified_amplitude(params)
    return ConstraintReport(tau=params.tau, squeeze=params.squeeze, g0=params.g0, peak_g1=p1, peak_g2=p2, cap=cap)


def _bisect(excess, lo: float, hi: float, tol: float, feasible_high: bool) -> float:
    """Bisect a monotone ``excess`` (<= 0 means feasible) and return the feasible bracket end."""
    f_lo, f_hi = excess(lo), excess(hi)
    if (f_lo <= 0) == (f_hi <= 0):
        raise BracketError(f"no sign change on [{lo}, {hi}] (excess {f_lo:.3g}, {f_hi:.3g})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (excess(mid) <= 0) == feasible_high:
            hi = mid
        else:
            lo = mid
    return hi if feasible_high else lo


def find_minimal_time(g0: float = 1.0, tol: float | None = None, *, cap: float = 1.0) -> float:
    """Shortest ``tau`` at which the unsqueezed dressed couplings stay within ``cap * g0``.

    ``tol`` is the final bracket width (default ``1e-4 / g0``); the search
    bracket is ``[1/g0, 20/g0]``.
    """
    if tol is None:
        tol = 1e-4 / g0
    if tol < 1e-4 / g0 * (1 - 1e-12):
        raise InvalidArgumentError("tol must be >= 1e-4 / g0")
    base = PulseParams(g0=g0, tau=1.0, squeeze=0.0, variant=Variant.DRESSED)

    def excess(tau):
        return max(peak_modified_amplitude(base.with_(tau=tau))) - cap * g0 * (1 + FEASIBILITY_RTOL)

    return _bisect(excess, 1.0 / g0, 20.0 / g0, tol, feasible_high=True)


def find_max_squeeze(tau: float, tol: float = 1e-3, *, g0: float = 1.0) -> float:
    """Largest squeeze parameter on ``[0, 10]`` for which each ``|g_i~|`` peak stays within ``g0``."""
    if tol < 1e-3:
        raise InvalidArgumentError("tol must be >= 1e-3")
    base = PulseParams(g0=g0, tau=tau, squeeze=0.0, variant=Variant.DRESSED)

    def excess(a):
        return max(peak_modified_amplitude(base.with_(squeeze=a))) - g0 * (1 + FEASIBILITY_RTOL)

    if excess(0.0) > 0:
        raise InfeasibleTimeError(f"tau={tau} is infeasible even without squeezing")
    return _bisect(excess, 0.0, 10.0, tol, feasible_high=False)
