"""Eigenstructure of the three-mode coupling and the adiabatic frame.

The dark state carries no mechanical amplitude, so a slow sweep of the mixing
angle moves an excitation between the two outer modes without ever touching the
lossy mechanical oscillator.
"""
import numpy as np

from qsc_sta import adiabatic_frame, adiabatic_hamiltonian, build_h_int, eigensystem, spin1_operators

g1, g2 = 0.6, 0.8
es = eigensystem(g1, g2)
print(f"g1={g1} g2={g2}  theta={es.theta:.4f} rad  g={es.g:.4f}")
print("energies (-, d, +):", np.round(es.energies, 6))
print("dark state over (a1, b_m, a2):", np.round(es.dark, 6))

h = build_h_int(g1, g2)
u = adiabatic_frame(es.theta)
print("U H U^dagger is diagonal:", np.allclose(u @ h @ u.conj().T, np.diag(np.diag(u @ h @ u.conj().T))))

mx, my, mz = spin1_operators()
theta_dot = 0.3
print("H_ad = g Mz - theta_dot My:", np.allclose(adiabatic_hamiltonian(es.g, theta_dot), es.g * mz - theta_dot * my))
print("the -theta_dot My term is the nonadiabatic leak the shortcut has to cancel")
