"""End-to-end verification report: closed forms against both oracles.

``run_verification("quick")`` covers everything except the density-matrix
runs (a few seconds); ``"full"`` adds the Lindblad cross-checks and the RK4
convergence-order study (a minute or two on one core).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import energetics, optima, oracle
from .model import BatteryParams

ORACLE_COUPLINGS = (0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 10.0)
OMEGA_B = 5.0  # in units of gamma
GAMMA = 1.0
T_MAX = 10.0
MOMENT_DT = 1e-4
N_CUT = 12
SWEEP_POINTS = 100


@dataclass
class CheckRecord:
    name: str
    criterion: int
    reference: float
    computed: float
    tolerance: float
    comparison: str  # "abs", "rel", "max" (computed <= tolerance), "min" (computed >= reference)
    passed: bool


@dataclass
class VerifyReport:
    mode: str
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, record: CheckRecord):
        self.records.append(record)

    def criterion(self, k: int) -> list:
        return [r for r in self.records if r.criterion == k]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "overall_pass": self.passed,
            "checks": [asdict(r) for r in self.records],
        }


def close_abs(name, crit, reference, computed, tol) -> CheckRecord:
    ok = bool(abs(computed - reference) <= tol)
    return CheckRecord(name, crit, float(reference), float(computed), tol, "abs", ok)


def close_rel(name, crit, reference, computed, tol) -> CheckRecord:
    ok = bool(abs(computed - reference) <= tol * abs(reference))
    return CheckRecord(name, crit, float(reference), float(computed), tol, "rel", ok)


def at_most(name, crit, computed, tol) -> CheckRecord:
    return CheckRecord(name, crit, 0.0, float(computed), tol, "max", bool(computed <= tol))


def at_least(name, crit, computed, lower) -> CheckRecord:
    return CheckRecord(name, crit, float(lower), float(computed), 0.0, "min", bool(computed >= lower))


def params(g_over_gamma: float, gamma: float = GAMMA, omega_b: float = OMEGA_B,
           Omega: float = 1.0) -> BatteryParams:
    return BatteryParams(omega_b=omega_b, g=g_over_gamma * gamma, gamma=gamma, Omega=Omega)


# -- individual criteria -----------------------------------------------------

def check_ep_energy(report: VerifyReport):
    p = params(0.25)
    e2 = math.exp(-2)
    report.add(close_abs("ep_E_at_tE_closed_form", 1, e2, optima.optimal_energy_value(p) / p.energy_scale, 1e-12))
    report.add(close_abs("ep_E_at_tE_from_time", 1, e2,
                         energetics.stored_energy(p, optima.optimal_energy_time(p)) / p.energy_scale, 1e-12))
    _, E_num = optima.numeric_optimum(p, "energy")
    report.add(close_abs("ep_E_at_tE_numeric_maximizer", 1, e2, E_num / p.energy_scale, 1e-8))


def check_ep_times(report: VerifyReport):
    p = params(0.25)
    report.add(close_abs("ep_t_E", 2, 4.0, optima.optimal_energy_time(p) * p.gamma, 1e-12))
    report.add(close_abs("ep_t_Pinst", 2, 2 * (2 - math.sqrt(2)), optima.optimal_inst_power_time(p) * p.gamma, 1e-9))
    report.add(close_abs("ep_t_Pavg", 2, 2.0, optima.optimal_avg_power_time(p) * p.gamma, 1e-9))


def check_constants(report: VerifyReport):
    c = optima.solve_transcendental_constants()
    report.add(close_abs("zeta", 3, 2.512862, c.zeta, 1e-6))
    report.add(close_abs("Z", 3, 1.165561, c.Z, 1e-6))
    report.add(at_most("tan_Z_minus_2Z", 3, abs(math.tan(c.Z) - 2 * c.Z), 1e-10))


def check_dissipationless(report: VerifyReport):
    g = 1.0
    p = BatteryParams(omega_b=OMEGA_B, g=g, gamma=0.0, Omega=1.0)
    E0 = p.energy_scale
    report.add(close_abs("lossless_E_at_pi_over_2g", 4, 1.0, energetics.stored_energy(p, math.pi / (2 * g)) / E0, 1e-10))
    t_num, E_num = optima.numeric_optimum(p, "energy")
    report.add(close_abs("lossless_max_E_numeric", 4, 1.0, E_num / E0, 1e-10))
    report.add(close_rel("lossless_t_E_numeric", 4, math.pi / (2 * g), t_num, 1e-6))
    report.add(close_abs("lossless_Pinst_at_pi_over_4g", 4, 1.0,
                         energetics.instantaneous_power(p, math.pi / (4 * g)) / (E0 * g), 1e-10))
    t_num, P_num = optima.numeric_optimum(p, "inst_power")
    report.add(close_abs("lossless_max_Pinst_numeric", 4, 1.0, P_num / (E0 * g), 1e-10))
    report.add(close_rel("lossless_t_Pinst_numeric", 4, math.pi / (4 * g), t_num, 1e-6))
    peak = optima.dissipationless_avg_power_peak()
    report.add(close_abs("lossless_peak_avg_power_2dp", 4, 0.72, round(peak.power_exact, 2), 0.0))
    t_num, P_num = optima.numeric_optimum(p, "avg_power")
    report.add(close_rel("lossless_t_Pavg_is_Z_over_g", 4, peak.z_exact / g, t_num, 1e-6))
    report.add(close_rel("lossless_max_Pavg_numeric", 4, peak.power_exact, P_num / (E0 * g), 1e-10))


def check_first_moment_oracle(report: VerifyReport):
    for r in ORACLE_COUPLINGS:
        p = params(r)
        trace = oracle.integrate_first_moments(p, MOMENT_DT, T_MAX)
        E_closed = energetics.stored_energy(p, trace.t)
        dev = np.max(np.abs(E_closed - p.omega_b * np.abs(trace.b) ** 2)) / p.energy_scale
        report.add(at_most(f"first_moment_oracle_g{r:g}", 5, dev, 1e-7))


def lindblad_dt(p: BatteryParams) -> float:
    """Largest step allowed by the accuracy guard, capped at 2e-3 / gamma."""
    return min(2e-3 / p.gamma, oracle.MAX_STEP_PRODUCT / max(p.omega_b, p.g, p.gamma))


def _lindblad_run(p: BatteryParams, dt: float, enforce: bool = True):
    cfg = oracle.FockConfig(n_cut=N_CUT, dt=dt, t_max=T_MAX / p.gamma, record_every=max(1, round(0.05 / dt)))
    return oracle.evolve_lindblad(oracle.pulse_initial_state(p, cfg), p, cfg, enforce_step_limit=enforce)


def _population_deviation(p: BatteryParams, trace) -> float:
    return float(np.max(np.abs(trace.n_b - energetics.stored_energy(p, trace.t) / p.omega_b)))


def check_lindblad_oracle(report: VerifyReport, progress: Optional[Callable] = None) -> tuple:
    worst = (-1.0, None)
    for r in ORACLE_COUPLINGS:
        p = params(r)
        dt = lindblad_dt(p)
        trace = _lindblad_run(p, dt)
        dev = _population_deviation(p, trace)
        E_closed = energetics.stored_energy(p, trace.t)
        erg = oracle.ergotropy_series(trace, p)
        report.add(at_most(f"lindblad_E_match_g{r:g}", 6, dev, 1e-4))
        report.add(at_most(f"lindblad_factorization_g{r:g}", 6, oracle.factorization_residual(trace), 1e-6))
        report.add(at_most(f"lindblad_poisson_variance_g{r:g}", 6, float(np.max(np.abs(trace.var_nb - trace.n_b))), 1e-5))
        report.add(at_most(f"lindblad_ergotropy_g{r:g}", 6,
                           float(np.max(np.abs(erg - E_closed))) / p.energy_scale, 1e-4))
        if progress:
            progress(f"lindblad g/gamma={r:g}: max |<b+b> - E/omega_b| = {dev:.2e}")
        if dev > worst[0]:
            worst = (dev, (r, dt))
    return worst


def check_convergence_order(report: VerifyReport, worst: tuple, progress: Optional[Callable] = None):
    dev, (r, dt) = worst
    p = params(r)
    errors = [_population_deviation(p, _lindblad_run(p, 4 * dt, enforce=False)),
              _population_deviation(p, _lindblad_run(p, 2 * dt, enforce=False)),
              dev]
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
    if progress:
        progress(f"convergence at g/gamma={r:g}: errors {errors}, orders {orders}")
    report.add(at_least(f"rk4_order_g{r:g}_dt{4 * dt:g}_to_{2 * dt:g}", 10, orders[0], 3.8))
    report.add(at_least(f"rk4_order_g{r:g}_dt{2 * dt:g}_to_{dt:g}", 10, orders[1], 3.8))


def sweep_ratios(points: int = SWEEP_POINTS) -> np.ndarray:
    return np.logspace(-2, 2, points)


def check_optimum_sweep(report: VerifyReport):
    keys = [("t_E", "E_at_tE", "energy"), ("t_Pinst", "Pinst_max", "inst_power"),
            ("t_Pavg", "Pavg_max", "avg_power")]
    worst_t = {k[0]: 0.0 for k in keys}
    worst_v = {k[1]: 0.0 for k in keys}
    series = {name: [] for pair in keys for name in pair[:2]}
    for r in sweep_ratios():
        p = params(r)
        res = optima.optimize(p)
        for t_key, v_key, quantity in keys:
            t_num, v_num = optima.numeric_optimum(p, quantity)
            t_ex, v_ex = getattr(res, t_key), getattr(res, v_key)
            worst_t[t_key] = max(worst_t[t_key], abs(t_ex - t_num) / t_ex)
            worst_v[v_key] = max(worst_v[v_key], abs(v_ex - v_num) / v_ex)
            series[t_key].append(t_ex)
            series[v_key].append(v_ex)
    for t_key, v_key, _ in keys:
        report.add(at_most(f"sweep_{t_key}_vs_numeric", 7, worst_t[t_key], 1e-6))
        report.add(at_most(f"sweep_{v_key}_vs_numeric", 7, worst_v[v_key], 1e-10))
    for name, values in series.items():
        d = np.diff(values)
        bad = int(np.sum(d >= 0)) if name.startswith("t_") else int(np.sum(d <= 0))
        report.add(at_most(f"monotonic_{name}", 7, bad, 0))


def check_asymptotics(report: VerifyReport):
    for r, side in ((1e-2, "weak"), (1e2, "strong")):
        p = params(r)
        exact = optima.optimize(p)
        for name, a in optima.asymptotics(p).items():
            if a.side == side:
                report.add(close_rel(f"asymptote_{name}", 8, getattr(exact, a.quantity), a.value, 0.05))
    p = params(1e-3)
    report.add(close_rel("t_Pinst_weak_limit_ln4", 8, math.log(4) / p.gamma, optima.optimal_inst_power_time(p), 1e-3))
    c = optima.solve_transcendental_constants()
    weak = math.sinh(c.zeta / 4) ** 2 * math.exp(-c.zeta / 2) / c.zeta
    strong = math.sin(c.Z) ** 2 / c.Z
    report.add(close_abs("prefactor_weak_2sf", 8, 0.051, float(f"{weak:.2g}"), 0.0))
    report.add(close_abs("prefactor_strong_2sf", 8, 0.72, float(f"{strong:.2g}"), 0.0))


def check_ep_continuity(report: VerifyReport):
    gam = GAMMA
    at = params(0.25)
    # t = 4/gamma is a node of the instantaneous power at the exceptional point
    times = np.array([0.1, 0.5, 1.0, 2.0, 3.0, 6.0, 8.0]) / gam
    funcs = {
        "E": energetics.stored_energy,
        "Pinst": energetics.instantaneous_power,
        "Pavg": energetics.average_power,
    }
    opt = {
        "t_E": optima.optimal_energy_time,
        "t_Pinst": optima.optimal_inst_power_time,
        "t_Pavg": optima.optimal_avg_power_time,
    }
    for sign, label in ((-1, "below"), (1, "above")):
        near = BatteryParams(OMEGA_B, gam / 4 + sign * 1e-8 * gam, gam, 1.0)
        for name, f in funcs.items():
            ref = np.asarray(f(at, times))
            dev = float(np.max(np.abs(np.asarray(f(near, times)) - ref) / np.abs(ref)))
            report.add(at_most(f"ep_continuity_{name}_{label}", 9, dev, 1e-6))
        for name, f in opt.items():
            report.add(close_rel(f"ep_continuity_{name}_{label}", 9, f(at), f(near), 1e-6))


def run_verification(mode: str = "quick", progress: Optional[Callable] = None) -> VerifyReport:
    if mode not in ("quick", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    report = VerifyReport(mode=mode)
    check_ep_energy(report)
    check_ep_times(report)
    check_constants(report)
    check_dissipationless(report)
    check_first_moment_oracle(report)
    if mode == "full":
        worst = check_lindblad_oracle(report, progress)
    check_optimum_sweep(report)
    check_asymptotics(report)
    check_ep_continuity(report)
    if mode == "full":
        check_convergence_order(report, worst, progress)
    return report
