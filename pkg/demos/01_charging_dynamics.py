"""Charging a holder oscillator from a pulsed, leaky charger.

Run with ``python demos/01_charging_dynamics.py``.
"""
# %%
import numpy as np

from pulsed_battery import BatteryParams, classify_regime, stored_energy, instantaneous_power, average_power

# Rates in units of gamma.  The exceptional point sits at g = gamma/4.
for g in (0.1, 0.25, 0.5, 1.0):
    p = BatteryParams(omega_b=5.0, g=g, gamma=1.0)
    info = classify_regime(p)
    print(f"g/gamma = {g:<5} {info.regime.value:10s} w = {info.w:+.4f}")

# %%
# Stored energy over omega_b Omega^2 on a coarse grid.  Below the EP the
# holder fills and drains once; above it the energy sloshes back and forth
# under an exp(-gamma t/2) envelope.
t = np.linspace(0, 10, 11)
print("t*gamma  " + "  ".join(f"g={g:<5}" for g in (0.1, 0.25, 0.5, 1.0)))
for ti in t:
    row = [stored_energy(BatteryParams(5.0, g, 1.0), ti) / 5.0 for g in (0.1, 0.25, 0.5, 1.0)]
    print(f"{ti:6.1f}   " + "  ".join(f"{v:.5f}" for v in row))

# %%
# At the exceptional point t = 4/gamma gives exactly exp(-2) of the pulse energy.
p_ep = BatteryParams(omega_b=5.0, g=0.25, gamma=1.0)
print(stored_energy(p_ep, 4.0) / 5.0, np.exp(-2))

# %%
# Instantaneous power dE/dt vanishes at the energy peak; the average power
# E/t peaks earlier, where dE/dt = E/t.
for ti in (1.0, 2.0, 4.0):
    print(f"t={ti}: dE/dt = {instantaneous_power(p_ep, ti):.5f}, E/t = {average_power(p_ep, ti):.5f}")

# %%
# Without loss the swap is complete: E = omega_b Omega^2 sin^2(g t).
lossless = BatteryParams(omega_b=5.0, g=1.0, gamma=0.0)
print(stored_energy(lossless, np.pi / 2) / 5.0)
