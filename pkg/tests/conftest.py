import numpy as np
import pytest

from qsc_sta import DecayRates, PulseParams, Variant

T0 = 3.24


@pytest.fixture
def benchmark_rates():
    return DecayRates.benchmark()


@pytest.fixture
def dressed_t0():
    return PulseParams(tau=T0, variant=Variant.DRESSED)


def vanilla(t, tau, g0=1.0):
    """Independent evaluation of the sin^2/cos^2 pulse pair."""
    x = np.pi * np.asarray(t) / (2 * tau)
    return g0 * np.sin(x) ** 2, g0 * np.cos(x) ** 2


def central_diff(fn, t, h):
    return (fn(t + h) - fn(t - h)) / (2 * h)
