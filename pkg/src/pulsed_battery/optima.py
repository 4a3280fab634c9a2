"""Optimal charging times, optimal values and their asymptotic forms.

Three figures of merit are optimised over the charging time:

* stored energy ``E``            -> ``t_E``, closed form
* instantaneous power ``dE/dt``  -> ``t_Pinst``, closed form
* average power ``E/t``          -> ``t_Pavg``, root of a transcendental equation

Every closed-form or root-found optimum can be cross-checked with
:func:`numeric_optimum`, a derivative-free maximiser that knows nothing
about the formulas.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

from . import energetics
from .model import BatteryParams, Regime, arctan_ratio, classify_regime, stable_C, stable_S
from .solvers import doubling_horizon, find_root, maximize_on_interval


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    ROOT_FOUND = "root_found"
    NUMERIC_MAXIMIZER = "numeric_maximizer"


@dataclass(frozen=True)
class TranscendentalConstants:
    zeta: float
    Z: float


@dataclass(frozen=True)
class OptimaResult:
    t_E: float
    E_at_tE: float
    t_Pinst: float
    Pinst_max: float
    t_Pavg: float
    Pavg_max: float
    methods: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Asymptote:
    name: str
    quantity: str
    side: str  # "weak" (g << gamma/4) or "strong" (g >> gamma/4)
    value: float


@dataclass(frozen=True)
class DissipationlessPeak:
    z_approx: float
    power_approx: float
    z_exact: float
    power_exact: float


def _require_coupling(p: BatteryParams):
    if p.g <= 0:
        raise ValueError("no optimum exists for g = 0: the holder never charges")


@functools.lru_cache(maxsize=None)
def solve_transcendental_constants() -> TranscendentalConstants:
    """``Z`` solves ``tan Z = 2 Z`` on (0, pi/2); ``zeta = 4 x`` with ``2x = tanh(x)(1 + 2x)``."""
    # multiplied through by cos to keep the pole at pi/2 out of the bracket
    Z = find_root(lambda y: 2 * y * math.cos(y) - math.sin(y), 1e-3, math.pi / 2 - 1e-9)
    x = find_root(lambda x: 2 * x - math.tanh(x) * (1 + 2 * x), 1e-3, 5.0)
    return TranscendentalConstants(zeta=4 * x, Z=Z)


# -- stored energy ---------------------------------------------------------

def optimal_energy_time(p: BatteryParams) -> float:
    """Time of maximal stored energy.

    ``arctanh(4 Gamma/gamma)/Gamma`` below the exceptional point, ``4/gamma``
    at it and ``arctan(4 G/gamma)/G`` above it; all three are
    ``(4/gamma) * arctan_ratio(16 w / gamma**2)``.
    """
    _require_coupling(p)
    if p.gamma == 0:
        return math.pi / (2 * p.g)
    return 4 / p.gamma * arctan_ratio(16 * p.w / p.gamma**2)


def optimal_energy_value(p: BatteryParams) -> float:
    # E(t_E) = omega_b Omega^2 exp(-gamma t_E / 2) in every regime
    _require_coupling(p)
    if p.gamma == 0:
        return p.energy_scale
    return p.energy_scale * math.exp(-2 * arctan_ratio(16 * p.w / p.gamma**2))


# -- instantaneous power ---------------------------------------------------

def printed_inst_power_argument(p: BatteryParams) -> float:
    """Argument of the inverse tangent in the textbook form of ``t_Pinst``.

    Below the exceptional point this is ``(8 Gamma gamma - sqrt(gamma^4 - 256 g^4))
    / (3 gamma^2 - 16 g^2)`` (fed to arctanh), above it ``(sqrt(256 g^4 - gamma^4)
    - 8 G gamma) / (16 g^2 - 3 gamma^2)`` (fed to arctan).  Both are 0/0 at
    ``g = sqrt(3) gamma / 4``; :func:`optimal_inst_power_time` uses the
    equivalent rationalised form ``4 sqrt|w| / (2 gamma + sqrt(gamma^2 + 16 g^2))``.
    """
    g, gam = p.g, p.gamma
    info = classify_regime(p)
    if info.regime is Regime.BELOW_EP:
        return (8 * info.Gamma * gam - math.sqrt(gam**4 - 256 * g**4)) / (3 * gam**2 - 16 * g**2)
    if info.regime is Regime.ABOVE_EP:
        return (math.sqrt(256 * g**4 - gam**4) - 8 * info.G * gam) / (16 * g**2 - 3 * gam**2)
    return math.nan


def printed_inst_power_time(p: BatteryParams) -> float:
    info = classify_regime(p)
    arg = printed_inst_power_argument(p)
    if info.regime is Regime.BELOW_EP:
        return math.atanh(arg) / info.Gamma
    if info.regime is Regime.ABOVE_EP:
        return math.atan(arg) / info.G
    return 2 * (2 - math.sqrt(2)) / p.gamma


def _inst_power_time_with_method(p: BatteryParams) -> tuple[float, Method]:
    _require_coupling(p)
    k = 4 / (2 * p.gamma + math.hypot(p.gamma, 4 * p.g))
    v = k * k * p.w
    # the arctanh branch needs its argument inside (-1, 1)
    if not (-1 < v) or not math.isfinite(v):
        t, _ = numeric_optimum(p, "inst_power")
        return t, Method.NUMERIC_MAXIMIZER
    return k * arctan_ratio(v), Method.CLOSED_FORM


def optimal_inst_power_time(p: BatteryParams) -> float:
    """Time of maximal instantaneous power.

    ``2(2 - sqrt 2)/gamma`` at the exceptional point, ``pi/(4 g)`` without loss,
    and ``ln(4)/gamma`` in the limit ``g -> 0``.
    """
    return _inst_power_time_with_method(p)[0]


def optimal_inst_power_value(p: BatteryParams) -> float:
    return float(energetics.instantaneous_power(p, optimal_inst_power_time(p)))


# -- average power ---------------------------------------------------------

def avg_power_turning_point(p: BatteryParams, t: float) -> float:
    """``2 t C - S (1 + gamma t / 2)``; vanishes where ``d(E/t)/dt = 0``.

    With ``y = G t`` above the exceptional point this is ``cos(y)/G`` times
    ``2y - tan(y)(1 + gamma y / 2G)``, and likewise with tanh below it.
    """
    S = float(stable_S(p.w, t))
    C = float(stable_C(p.w, t))
    return 2 * t * C - S * (1 + p.gamma * t / 2)


def _avg_power_time_with_method(p: BatteryParams) -> tuple[float, Method]:
    _require_coupling(p)
    if p.gamma == 0:
        return solve_transcendental_constants().Z / p.g, Method.ROOT_FOUND
    if classify_regime(p).regime is Regime.AT_EP:
        return 2 / p.gamma, Method.CLOSED_FORM
    # dimensionless time s = t * rate; the turning-point function is positive
    # just above the trivial root at s = 0
    rate = p.g + p.gamma

    def h(s):
        return avg_power_turning_point(p, s / rate)

    lo = 1e-3
    hi = 2 * lo
    while h(hi) > 0:
        lo, hi = hi, 2 * hi
        if hi > 1e12:
            raise RuntimeError(f"no turning point of the average power for {p}")
    s = find_root(h, lo, hi, xtol=1e-12)
    return s / rate, Method.ROOT_FOUND


def optimal_avg_power_time(p: BatteryParams) -> float:
    """Time of maximal average power ``E/t``, found by bracketed root finding.

    ``2/gamma`` at the exceptional point and ``Z/g`` without loss.
    """
    return _avg_power_time_with_method(p)[0]


def optimal_avg_power_value(p: BatteryParams) -> float:
    return float(energetics.average_power(p, optimal_avg_power_time(p)))


def approx_avg_power_time(p: BatteryParams) -> float:
    """Interpolating approximation to :func:`optimal_avg_power_time`.

    Exact at the exceptional point and in both coupling limits; not used for
    any other computation in this package.
    """
    _require_coupling(p)
    if p.gamma <= 0:
        raise ValueError("the approximation needs gamma > 0")
    c = solve_transcendental_constants()
    regime = classify_regime(p).regime
    if regime is Regime.AT_EP:
        return 2 / p.gamma
    if regime is Regime.BELOW_EP:
        return (c.zeta - 8 * (c.zeta - 2) * (p.g / p.gamma) ** 1.5) / p.gamma
    return (c.Z - (2 * c.Z - 1) / (4 * math.sqrt(2)) * (p.gamma / p.g) ** 0.75) / p.g


def dissipationless_avg_power_peak() -> DissipationlessPeak:
    """Peak of ``sin^2(z)/z`` (average power in units of ``omega_b Omega^2 g``).

    ``z_approx`` comes from expanding ``tan z = 2 z`` to first order around
    ``pi/2`` and solving the resulting quadratic.
    """
    z_approx = (2 * math.pi + math.sqrt(9 * math.pi**2 - 60)) / 10
    Z = solve_transcendental_constants().Z
    return DissipationlessPeak(
        z_approx=z_approx,
        power_approx=math.sin(z_approx) ** 2 / z_approx,
        z_exact=Z,
        power_exact=math.sin(Z) ** 2 / Z,
    )


# -- everything at once ----------------------------------------------------

def optimize(p: BatteryParams) -> OptimaResult:
    t_E = optimal_energy_time(p)
    t_Pi, m_Pi = _inst_power_time_with_method(p)
    t_Pa, m_Pa = _avg_power_time_with_method(p)
    return OptimaResult(
        t_E=t_E,
        E_at_tE=optimal_energy_value(p),
        t_Pinst=t_Pi,
        Pinst_max=float(energetics.instantaneous_power(p, t_Pi)),
        t_Pavg=t_Pa,
        Pavg_max=float(energetics.average_power(p, t_Pa)),
        methods={
            "t_E": Method.CLOSED_FORM,
            "E_at_tE": Method.CLOSED_FORM,
            "t_Pinst": m_Pi,
            "Pinst_max": m_Pi,
            "t_Pavg": m_Pa,
            "Pavg_max": m_Pa,
        },
    )


def asymptotics(p: BatteryParams) -> dict[str, Asymptote]:
    """Weak- (``g << gamma/4``) and strong-coupling (``g >> gamma/4``) forms.

    Keys are ``<quantity>_<side>``; quantities are ``t_E``, ``E_at_tE``,
    ``t_Pinst``, ``Pinst_max``, ``t_Pavg`` and ``Pavg_max``.
    """
    _require_coupling(p)
    if p.gamma <= 0:
        raise ValueError("asymptotic forms need gamma > 0")
    g, gam, E0 = p.g, p.gamma, p.energy_scale
    c = solve_transcendental_constants()
    weak_prefactor = math.sinh(c.zeta / 4) ** 2 * math.exp(-c.zeta / 2) / c.zeta
    strong_prefactor = math.sin(c.Z) ** 2 / c.Z
    rows = [
        ("t_E", "weak", 4 / gam * math.log(gam / (2 * g))),
        ("t_E", "strong", math.pi / (2 * g) - gam / (4 * g * g)),
        ("E_at_tE", "weak", E0 * (2 * g / gam) ** 2),
        ("E_at_tE", "strong", E0 * (1 - math.pi * gam / (4 * g))),
        ("t_Pinst", "weak", math.log(4) / gam - 16 * (1 - math.log(2)) * g * g / gam**3),
        ("t_Pinst", "strong", (math.pi - gam / g) / (4 * g)),
        ("Pinst_max", "weak", E0 * g * g / gam),
        ("Pinst_max", "strong", E0 * g * (1 - (math.pi + 2) / 8 * gam / g)),
        ("t_Pavg", "weak", c.zeta / gam),
        ("t_Pavg", "strong", c.Z / g),
        ("Pavg_max", "weak", weak_prefactor * E0 * (4 * g) ** 2 / gam),
        ("Pavg_max", "strong", strong_prefactor * E0 * g),
    ]
    return {
        f"{q}_{side}": Asymptote(name=f"{q}_{side}", quantity=q, side=side, value=v)
        for q, side, v in rows
    }


# -- numeric oracle ----------------------------------------------------------

_QUANTITIES = {
    "energy": energetics.stored_energy,
    "inst_power": energetics.instantaneous_power,
    "avg_power": energetics.average_power,
}


def search_horizon(p: BatteryParams, quantity: str) -> float:
    """Upper end of a time window whose maximum is the global one.

    Above the exceptional point the first oscillation hump ``(0, pi/G)`` holds
    the global maximum of all three quantities; otherwise they are unimodal
    and a doubling search brackets the peak.
    """
    _require_coupling(p)
    f = _QUANTITIES[quantity]
    t0 = 1e-2 / (p.g + p.gamma)
    horizon = doubling_horizon(lambda t: float(f(p, t)), t0)
    info = classify_regime(p)
    if info.regime is Regime.ABOVE_EP:
        horizon = min(horizon, math.pi / info.G)
    return horizon


def numeric_optimum(p: BatteryParams, quantity: str, n_scan: int = 400) -> tuple[float, float]:
    """Maximise ``quantity`` ("energy", "inst_power" or "avg_power") over time.

    Coarse grid scan followed by golden-section search; uses only the
    time-domain evaluators, never the optimum formulas.
    """
    f = _QUANTITIES[quantity]
    hi = search_horizon(p, quantity)
    return maximize_on_interval(lambda t: f(p, t), 0.0, hi, n_scan=n_scan)
