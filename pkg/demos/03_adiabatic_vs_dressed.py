"""Slow adiabatic transfer against the dressed shortcut, with and without loss.

Without decay the dressed protocol is exact at any duration, while the plain
pulse pair only approaches unit fidelity for long times. Under loss the long
adiabatic pulse pays for its duration.
"""
from qsc_sta import BENCHMARK_T0, DecayRates, ProtocolSpec, PulseParams, Variant, run_conversion

loss = DecayRates.benchmark()
print(f"{'variant':<10} {'tau/T0':>6} {'closed F':>9} {'lossy F':>9}")
for variant, n in [(Variant.ADIABATIC, 5), (Variant.ADIABATIC, 8), (Variant.SATD, 1), (Variant.DRESSED, 1)]:
    pulse = PulseParams(tau=n * BENCHMARK_T0, variant=variant)
    closed = run_conversion(ProtocolSpec(pulse=pulse, open_system=False)).fidelity
    lossy = run_conversion(ProtocolSpec(pulse=pulse, rates=loss)).fidelity
    print(f"{variant.value:<10} {n:>6} {closed:9.5f} {lossy:9.5f}")
