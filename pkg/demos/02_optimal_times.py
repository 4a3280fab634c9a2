"""When to disconnect the charger.

Three figures of merit, three optimal times.  The energy and
instantaneous-power optima have closed forms; the average-power optimum is
the root of a transcendental equation.

Run with ``python demos/02_optimal_times.py``.
"""
# %%
import math

import numpy as np

from pulsed_battery import (
    BatteryParams,
    asymptotics,
    numeric_optimum,
    optimize,
    solve_transcendental_constants,
)

c = solve_transcendental_constants()
print(f"zeta = {c.zeta:.9f}   Z = {c.Z:.9f}   tan(Z) - 2Z = {math.tan(c.Z) - 2 * c.Z:.1e}")

# %%
# Optimal times shrink and optimal values grow with the coupling.
print(" g/gamma    t_E    E(t_E)   t_Pinst  Pinst_max   t_Pavg  Pavg_max")
for g in np.logspace(-2, 2, 9):
    p = BatteryParams(omega_b=1.0, g=float(g), gamma=1.0)
    r = optimize(p)
    print(f"{g:8.3f} {r.t_E:7.4f} {r.E_at_tE:8.5f} {r.t_Pinst:8.4f} {r.Pinst_max:10.5f}"
          f" {r.t_Pavg:8.4f} {r.Pavg_max:9.5f}")

# %%
# At the exceptional point all three are simple: 4, 2(2 - sqrt 2) and 2 (times 1/gamma).
r = optimize(BatteryParams(omega_b=1.0, g=0.25, gamma=1.0))
print(r.t_E, r.t_Pinst, 2 * (2 - math.sqrt(2)), r.t_Pavg)
print({k: m.value for k, m in r.methods.items()})

# %%
# The numeric maximiser never looks at the formulas, so it is an independent check.
p = BatteryParams(omega_b=1.0, g=0.8, gamma=1.0)
r = optimize(p)
for quantity, t_exact in (("energy", r.t_E), ("inst_power", r.t_Pinst), ("avg_power", r.t_Pavg)):
    t_num, _ = numeric_optimum(p, quantity)
    print(f"{quantity:10s} formula {t_exact:.12f}  maximiser {t_num:.12f}")

# %%
# Weak-coupling forms hold for g << gamma/4, strong-coupling forms for g >> gamma/4.
for g in (0.01, 100.0):
    p = BatteryParams(omega_b=1.0, g=g, gamma=1.0)
    r = optimize(p)
    side = "weak" if g < 0.25 else "strong"
    print(f"g/gamma = {g}")
    for name, a in asymptotics(p).items():
        if a.side == side:
            exact = getattr(r, a.quantity)
            print(f"   {name:18s} {a.value:12.6g}  exact {exact:12.6g}  rel err {abs(a.value / exact - 1):.2%}")
