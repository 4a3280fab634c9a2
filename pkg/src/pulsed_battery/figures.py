"""Data behind the energy, instantaneous-power and average-power figures.

Every panel is a table ``(header, rows)`` in normalised units: times are
multiplied by ``gamma``, energies divided by ``omega_b Omega^2`` and powers
by ``omega_b Omega^2 gamma``.  The (a) panels are time traces at four
couplings; the (b) and (c) panels sweep ``g/gamma`` and list the exact
optimum next to its weak- and strong-coupling asymptotes.
"""
from __future__ import annotations

import numpy as np

from . import energetics, optima
from .model import BatteryParams

FIGURE_IDS = ("fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c")

#: below, at, and two values above the exceptional point
TRACE_COUPLINGS = (0.1, 0.25, 0.5, 1.0)

_TRACE_QUANTITY = {
    "fig2": ("E_norm", energetics.stored_energy, 0),
    "fig3": ("Pinst_norm", energetics.instantaneous_power, 1),
    "fig4": ("Pavg_norm", energetics.average_power, 1),
}

# panel -> (result attribute, column stem, power of gamma in the unit)
_SWEEP_QUANTITY = {
    "fig2b": ("t_E", "tE*gamma", -1),
    "fig2c": ("E_at_tE", "E_at_tE_norm", 0),
    "fig3b": ("t_Pinst", "tPinst*gamma", -1),
    "fig3c": ("Pinst_max", "Pinst_max_norm", 1),
    "fig4b": ("t_Pavg", "tPavg*gamma", -1),
    "fig4c": ("Pavg_max", "Pavg_max_norm", 1),
}


def coupling_grid(points: int = 201, lo: float = 1e-2, hi: float = 1e2) -> np.ndarray:
    """Log-spaced ``g/gamma`` values with the exceptional point 1/4 added."""
    grid = np.logspace(np.log10(lo), np.log10(hi), points)
    if lo < 0.25 < hi:
        grid = np.unique(np.append(grid, 0.25))
    return grid


def _normaliser(p: BatteryParams, gamma_power: int) -> float:
    scale = p.energy_scale if p.Omega > 0 else 1.0
    return scale * p.gamma**gamma_power


def time_panel(figure_id: str, points: int = 401, t_max: float = 10.0,
               omega_b: float = 5.0, Omega: float = 1.0) -> tuple[list, list]:
    stem, f, gamma_power = _TRACE_QUANTITY[figure_id[:4]]
    tau = np.linspace(0.0, t_max, points)
    header = ["t*gamma"] + [f"{stem}_g{r:g}" for r in TRACE_COUPLINGS]
    columns = [tau]
    for r in TRACE_COUPLINGS:
        p = BatteryParams(omega_b=omega_b, g=r, gamma=1.0, Omega=Omega)
        columns.append(np.asarray(f(p, tau)) / _normaliser(p, gamma_power))
    return header, np.column_stack(columns).tolist()


def sweep_panel(figure_id: str, points: int = 201, omega_b: float = 5.0,
                Omega: float = 1.0) -> tuple[list, list]:
    attr, stem, gamma_power = _SWEEP_QUANTITY[figure_id]
    header = ["g/gamma", stem, f"{stem}_weak", f"{stem}_strong"]
    rows = []
    for r in coupling_grid(points):
        p = BatteryParams(omega_b=omega_b, g=float(r), gamma=1.0, Omega=Omega)
        norm = 1 / p.gamma if gamma_power < 0 else _normaliser(p, gamma_power)
        asym = optima.asymptotics(p)
        rows.append([
            float(r),
            getattr(optima.optimize(p), attr) / norm,
            asym[f"{attr}_weak"].value / norm,
            asym[f"{attr}_strong"].value / norm,
        ])
    return header, rows


def figure_table(figure_id: str, points: int | None = None, omega_b: float = 5.0,
                 Omega: float = 1.0) -> tuple[list, list]:
    if figure_id not in FIGURE_IDS:
        raise KeyError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")
    if figure_id.endswith("a"):
        return time_panel(figure_id, points or 401, omega_b=omega_b, Omega=Omega)
    return sweep_panel(figure_id, points or 201, omega_b=omega_b, Omega=Omega)
