import math

import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import T0
from qsc_sta.errors import BracketError, InfeasibleTimeError, InvalidArgumentError
from qsc_sta.pulses import PulseParams, Variant, modified_couplings
from qsc_sta.search import constraint_report, find_max_squeeze, find_minimal_time, peak_modified_amplitude


def dense_peak(params, n=200_001):
    t = np.linspace(0, params.tau, n)
    mc = modified_couplings(params, t)
    return np.max(np.abs(mc.g1)), np.max(np.abs(mc.g2))


@pytest.fixture(scope="module")
def t_min():
    return find_minimal_time(1.0)


def test_peak_adiabatic_is_g0():
    assert peak_modified_amplitude(PulseParams(tau=T0, variant=Variant.ADIABATIC)) == (1.0, 1.0)


def test_peak_slow_dressed():
    p1, p2 = peak_modified_amplitude(PulseParams(tau=10 * T0))
    assert p1 < 1.01 and p2 < 1.01


def test_peak_binding_at_t0():
    assert max(peak_modified_amplitude(PulseParams(tau=T0))) == pytest.approx(1.0, rel=5e-3)


@pytest.mark.parametrize("tau, squeeze", [(0.6 * T0, 0.0), (T0, 0.85), (2 * T0, 0.4)])
def test_peak_matches_dense_grid(tau, squeeze):
    p = PulseParams(tau=tau, squeeze=squeeze)
    refined = peak_modified_amplitude(p)
    dense = dense_peak(p)
    assert refined == pytest.approx(dense, abs=1e-8)
    assert refined[0] >= dense[0] - 1e-12 and refined[1] >= dense[1] - 1e-12


def test_minimal_time(t_min):
    assert t_min == pytest.approx(3.24, abs=0.05)
    assert constraint_report(PulseParams(tau=t_min)).feasible
    assert not constraint_report(PulseParams(tau=0.99 * t_min)).feasible
    report = constraint_report(PulseParams(tau=t_min))
    assert report.binding and report.feasible


def test_minimal_time_si(t_min):
    g0 = 2 * math.pi * 5e6
    tau_si = find_minimal_time(g0, tol=1e-4 / g0)
    assert tau_si == pytest.approx(t_min / g0, rel=1e-4)
    assert tau_si * 1e9 == pytest.approx(3.24 / g0 * 1e9, abs=1.6)
    assert 3.24 / g0 * 1e9 == pytest.approx(103.1, abs=0.05)


def test_doubled_cap_is_faster(t_min):
    fast = find_minimal_time(1.0, cap=2.0)
    assert fast < 3.24 and fast < t_min
    assert max(peak_modified_amplitude(PulseParams(tau=fast))) <= 2.0 * (1 + 1e-6)
    assert max(peak_modified_amplitude(PulseParams(tau=0.99 * fast))) > 2.0


def test_minimal_time_errors():
    with pytest.raises(InvalidArgumentError):
        find_minimal_time(1.0, tol=1e-6)
    with pytest.raises(BracketError):
        find_minimal_time(1.0, cap=100.0)


@pytest.mark.parametrize("tau_t0, expected", [(1.0, 0.85), (2.0, 0.69)])
def test_max_squeeze(tau_t0, expected):
    a_max = find_max_squeeze(tau_t0 * T0)
    assert a_max == pytest.approx(expected, abs=0.02)
    report = constraint_report(PulseParams(tau=tau_t0 * T0, squeeze=a_max))
    assert report.feasible and report.binding
    assert not constraint_report(PulseParams(tau=tau_t0 * T0, squeeze=a_max + 2e-3)).feasible


def slow_limit_squeeze():
    """Largest A with max_x (1 + A sin^4 2x) cos^2 x <= 1, the tau -> infinity limit of g2~ <= g0."""
    x = np.linspace(1e-3, np.pi / 2, 400_001)
    return brentq(lambda a: np.max((1 + a * np.sin(2 * x) ** 4) * np.cos(x) ** 2) - 1, 0.1, 5, xtol=1e-10)


def test_slow_limit_oracle_is_16_over_27():
    assert slow_limit_squeeze() == pytest.approx(16 / 27, abs=1e-6)


def test_max_squeeze_decreases_towards_slow_limit():
    limit = slow_limit_squeeze()
    a10 = find_max_squeeze(10 * T0)
    assert limit - 1e-3 <= a10 < find_max_squeeze(2 * T0)
    assert find_max_squeeze(100 * T0) == pytest.approx(limit, abs=2e-3)


def test_max_squeeze_infeasible():
    with pytest.raises(InfeasibleTimeError):
        find_max_squeeze(0.5 * T0)
    with pytest.raises(InvalidArgumentError):
        find_max_squeeze(T0, tol=1e-5)


def test_peak_monotone_in_squeeze():
    taus = [1, 1.5, 2, 5, 10]
    squeezes = [0, 0.2, 0.4, 0.6, 0.85]
    for m in taus:
        peaks = [max(peak_modified_amplitude(PulseParams(tau=m * T0, squeeze=a))) for a in squeezes]
        assert all(b >= a - 1e-9 for a, b in zip(peaks, peaks[1:]))


def test_peak_monotone_in_tau_without_squeeze():
    peaks = [max(peak_modified_amplitude(PulseParams(tau=m * T0))) for m in (0.4, 0.6, 0.8, 1.0, 2.0)]
    assert all(b <= a + 1e-9 for a, b in zip(peaks, peaks[1:]))


def test_grid_phase_invariance():
    p = PulseParams(tau=T0, squeeze=0.85)
    assert peak_modified_amplitude(p, phase=0.5) == pytest.approx(peak_modified_amplitude(p), abs=1e-9)
