"""Counterintuitive pulse pair and the controls added by the dressed-state shortcut."""
import numpy as np

from qsc_sta import BENCHMARK_T0, PulseParams, control_fields, modified_couplings

tau = BENCHMARK_T0
t = np.linspace(0, tau, 9)
for squeeze in (0.0, 0.85):
    p = PulseParams(tau=tau, squeeze=squeeze)
    cf = control_fields(p, t)
    mc = modified_couplings(p, t)
    print(f"\nA = {squeeze}")
    print(f"{'t':>7} {'mu':>8} {'gx':>8} {'gz':>8} {'g1~':>8} {'g2~':>8}")
    for row in zip(t, cf.mu, cf.gx, cf.gz, mc.g1, mc.g2):
        print(" ".join(f"{v:8.4f}" for v in row))
