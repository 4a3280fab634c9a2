"""Battery parameters, regime classification and branch-free evaluators.

The charger (mode ``a``) and holder (mode ``b``) share the level spacing
``omega_b``; they are coupled at rate ``g`` and the charger leaks at rate
``gamma``.  Every closed form in this package is written in terms of the
discriminant ``w = g**2 - (gamma/4)**2`` and the two evaluators
:func:`stable_S` and :func:`stable_C`, which replace the three-way
below/at/above exceptional-point case split by a single expression that is
continuous through ``w = 0``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

#: Relative width of the band around ``w = 0`` that is labelled ``AT_EP``.
EP_REL_TOL = 1e-9

#: Below this value of ``|w| t**2`` the evaluators switch to a Taylor series.
SERIES_SWITCH = 1e-4


@dataclass(frozen=True)
class BatteryParams:
    """Physical inputs of one battery instance (hbar = 1).

    Parameters
    ----------
    omega_b : float
        Level spacing of both oscillators.
    g : float
        Charger-holder coupling rate.
    gamma : float
        Dissipation rate of the charger.
    Omega : float
        Dimensionless strength of the delta pulse.
    """

    omega_b: float
    g: float
    gamma: float
    Omega: float = 1.0

    def __post_init__(self):
        for name in ("omega_b", "g", "gamma", "Omega"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.omega_b <= 0:
            raise ValueError(f"omega_b must be positive, got {self.omega_b}")
        if self.g < 0 or self.gamma < 0 or self.Omega < 0:
            raise ValueError("g, gamma and Omega must be non-negative")

    @property
    def w(self) -> float:
        """Discriminant ``g**2 - (gamma/4)**2``, factored to avoid cancellation."""
        q = self.gamma / 4
        return (self.g - q) * (self.g + q)

    @property
    def g_ep(self) -> float:
        return self.gamma / 4

    @property
    def energy_scale(self) -> float:
        """``omega_b * Omega**2``, the largest energy the holder can ever hold."""
        return self.omega_b * self.Omega**2

    def replace(self, **changes) -> "BatteryParams":
        fields = dict(omega_b=self.omega_b, g=self.g, gamma=self.gamma, Omega=self.Omega)
        fields.update(changes)
        return BatteryParams(**fields)


class Regime(enum.Enum):
    BELOW_EP = "below_ep"
    AT_EP = "at_ep"
    ABOVE_EP = "above_ep"


@dataclass(frozen=True)
class RegimeData:
    regime: Regime
    w: float
    G: Optional[float]
    Gamma: Optional[float]
    g_EP: float


@dataclass(frozen=True)
class EigenPair:
    eps_plus: complex
    eps_minus: complex


def ep_tolerance(p: BatteryParams) -> float:
    return EP_REL_TOL * (p.gamma / 4) ** 2


def classify_regime(p: BatteryParams) -> RegimeData:
    """Place ``p`` below, at or above the exceptional point ``g = gamma/4``.

    The label only matters for reporting; values never depend on it because
    the evaluators are continuous through the exceptional point.
    """
    w = p.w
    tau = ep_tolerance(p)
    if w > tau:
        return RegimeData(Regime.ABOVE_EP, w, math.sqrt(w), None, p.g_ep)
    if w < -tau:
        return RegimeData(Regime.BELOW_EP, w, None, math.sqrt(-w), p.g_ep)
    return RegimeData(Regime.AT_EP, w, None, None, p.g_ep)


def dynamical_matrix(p: BatteryParams) -> np.ndarray:
    """Non-Hermitian 2x2 generator of the first moments, ``i d/dt psi = H psi``."""
    return np.array(
        [[p.omega_b - 0.5j * p.gamma, p.g], [p.g, p.omega_b]], dtype=complex
    )


def eigenvalues(p: BatteryParams) -> EigenPair:
    """Complex eigenfrequencies ``omega_b - i gamma/4 +/- sqrt(w)``.

    Below the exceptional point ``sqrt(w) = i Gamma``, which makes
    ``eps_plus -> omega_b`` (the lossless holder) as ``g -> 0``.
    """
    centre = complex(p.omega_b, -p.gamma / 4)
    w = p.w
    root = complex(math.sqrt(w), 0.0) if w >= 0 else complex(0.0, math.sqrt(-w))
    return EigenPair(centre + root, centre - root)


def _series_S(x, t):
    # t * sum_k (-x)^k / (2k+1)!, x = w t^2
    return t * (1 - x / 6 * (1 - x / 20 * (1 - x / 42)))


def _series_C(x):
    # sum_k (-x)^k / (2k)!
    return 1 - x / 2 * (1 - x / 12 * (1 - x / 30))


def stable_S(w: float, t):
    """``sin(sqrt(w) t)/sqrt(w)``, ``t`` or ``sinh(sqrt(-w) t)/sqrt(-w)``.

    Accepts scalar or array ``t``.  For ``|w| t**2 < SERIES_SWITCH`` a
    four-term Taylor series is used, so the result is smooth in ``w``.
    """
    t = np.asarray(t, dtype=float)
    x = w * t * t
    small = np.abs(x) < SERIES_SWITCH
    if w > 0:
        k = math.sqrt(w)
        generic = np.sin(k * t) / k
    elif w < 0:
        k = math.sqrt(-w)
        with np.errstate(over="ignore"):
            generic = np.sinh(k * t) / k
    else:
        generic = t
    out = np.where(small, _series_S(x, t), generic)
    return out[()] if out.ndim == 0 else out


def stable_C(w: float, t):
    """``cos(sqrt(w) t)``, ``1`` or ``cosh(sqrt(-w) t)``; companion of :func:`stable_S`."""
    t = np.asarray(t, dtype=float)
    x = w * t * t
    small = np.abs(x) < SERIES_SWITCH
    if w > 0:
        generic = np.cos(math.sqrt(w) * t)
    elif w < 0:
        with np.errstate(over="ignore"):
            generic = np.cosh(math.sqrt(-w) * t)
    else:
        generic = np.ones_like(t)
    out = np.where(small, _series_C(x), generic)
    return out[()] if out.ndim == 0 else out


def arctan_ratio(v: float) -> float:
    """``arctan(sqrt(v))/sqrt(v)`` continued to ``arctanh(sqrt(-v))/sqrt(-v)`` for v < 0.

    Equals 1 at ``v = 0``.  Diverges as ``v -> -1``.
    """
    if abs(v) < SERIES_SWITCH:
        return 1 - v / 3 + v * v / 5 - v**3 / 7 + v**4 / 9
    if v > 0:
        r = math.sqrt(v)
        return math.atan(r) / r
    r = math.sqrt(-v)
    if r >= 1:
        return math.inf
    return math.atanh(r) / r
