"""How fast can the transfer be, and how much squeezing does a given time allow?

The modified couplings must stay below the bare peak coupling g0. That sets a
shortest duration for A = 0 and, at longer durations, a largest squeeze A.
"""
import math

from qsc_sta import BENCHMARK_T0, PulseParams, constraint_report, find_max_squeeze, find_minimal_time
from qsc_sta.errors import InfeasibleTimeError

t_min = find_minimal_time(1.0)
print(f"shortest feasible tau at A=0: {t_min:.4f}/g0  ({t_min / (2 * math.pi * 5e6) * 1e9:.1f} ns at g0=2pi*5MHz)")
print(constraint_report(PulseParams(tau=t_min)).to_dict())

for n in (0.5, 1, 2, 5, 10):
    try:
        a = find_max_squeeze(n * BENCHMARK_T0)
        print(f"tau = {n:>4} T0: A_max = {a:.4f}")
    except InfeasibleTimeError as exc:
        print(f"tau = {n:>4} T0: {exc}")
print(f"long-time limit of A_max: 16/27 = {16 / 27:.4f}")
