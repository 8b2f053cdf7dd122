"""Squeezing the auxiliary function lowers the mechanical occupation.

The peak of P_bm follows sin^2(mu) at the pulse midpoint; a larger A shrinks mu
and with it the time the excitation spends in the mechanical mode.
"""
from qsc_sta import BENCHMARK_T0, DecayRates, ProtocolSpec, PulseParams, predicted_intermediate_population, sweep_squeeze

base = ProtocolSpec(pulse=PulseParams(tau=BENCHMARK_T0), rates=DecayRates.benchmark())
squeezes = [0.0, 0.2, 0.4, 0.6, 0.85]
print(f"{'A':>5} {'peak P_bm':>10} {'sin^2 mu':>9} {'F':>8} {'feasible':>8}")
for r in sweep_squeeze(base, squeezes, workers=1):
    predicted = predicted_intermediate_population(r.spec.pulse, BENCHMARK_T0 / 2)
    print(f"{r.spec.pulse.squeeze:5.2f} {r.peak_mechanical:10.4f} {predicted:9.4f} {r.fidelity:8.4f} {str(r.feasible):>8}")
