"""Closed-form first moments, stored energy and powers after the pulse.

All functions accept scalar or array times.  Before the pulse (``t < 0``)
both oscillators are in the vacuum, so moments and energy are zero there.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import BatteryParams, stable_C, stable_S


@dataclass(frozen=True)
class FirstMoments:
    a: complex | np.ndarray
    b: complex | np.ndarray
    t: float | np.ndarray


@dataclass(frozen=True)
class EnergyRecord:
    t: float
    E: float
    P_inst: float
    P_avg: float


def _scalar(x):
    x = np.asarray(x)
    return x[()] if x.ndim == 0 else x


def first_moments(p: BatteryParams, t) -> FirstMoments:
    """``<a>(t)`` and ``<b>(t)`` in the lab frame.

    Starting from ``<a>(0+) = -i Omega`` and ``<b>(0+) = 0``::

        <a> = -i Omega [C - (gamma/4) S] exp(-gamma t/4 - i omega_b t)
        <b> = -Omega g S exp(-gamma t/4 - i omega_b t)

    with ``S = stable_S(w, t)`` and ``C = stable_C(w, t)``.
    """
    t = np.asarray(t, dtype=float)
    tp = np.maximum(t, 0.0)
    w = p.w
    S = stable_S(w, tp)
    C = stable_C(w, tp)
    phase = np.exp(-p.gamma * tp / 4 - 1j * p.omega_b * tp)
    a = -1j * p.Omega * (C - p.gamma / 4 * S) * phase
    b = -p.Omega * p.g * S * phase
    before = t < 0
    a = np.where(before, 0.0, a)
    b = np.where(before, 0.0, b)
    return FirstMoments(_scalar(a), _scalar(b), _scalar(t))


def stored_energy(p: BatteryParams, t):
    """Energy ``omega_b <b^dagger b>`` held by the holder at time ``t``."""
    t = np.asarray(t, dtype=float)
    tp = np.maximum(t, 0.0)
    if p.gamma == 0:
        E = p.energy_scale * np.sin(p.g * tp) ** 2
    else:
        S = stable_S(p.w, tp)
        E = p.energy_scale * (p.g * S) ** 2 * np.exp(-p.gamma * tp / 2)
    return _scalar(np.where(t < 0, 0.0, E))


def instantaneous_power(p: BatteryParams, t):
    """Time derivative of :func:`stored_energy`.

    ``omega_b Omega^2 g^2 [2 S C - (gamma/2) S^2] exp(-gamma t/2)``; reduces to
    ``omega_b Omega^2 g sin(2 g t)`` without loss.
    """
    t = np.asarray(t, dtype=float)
    tp = np.maximum(t, 0.0)
    if p.gamma == 0:
        P = p.energy_scale * p.g * np.sin(2 * p.g * tp)
    else:
        S = stable_S(p.w, tp)
        C = stable_C(p.w, tp)
        P = (
            p.energy_scale
            * p.g**2
            * (2 * S * C - p.gamma / 2 * S * S)
            * np.exp(-p.gamma * tp / 2)
        )
    return _scalar(np.where(t < 0, 0.0, P))


def average_power(p: BatteryParams, t):
    """Average charging power ``E(t)/t``, continued by 0 at ``t = 0``.

    Raises
    ------
    ValueError
        If any ``t`` is negative.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("average power is undefined for t < 0")
    E = np.asarray(stored_energy(p, t))
    with np.errstate(divide="ignore", invalid="ignore"):
        P = np.where(t > 0, E / np.where(t > 0, t, 1.0), 0.0)
    return _scalar(P)


def ergotropy_analytic(p: BatteryParams, t):
    """Extractable work stored in the holder.

    The holder stays in a pure coherent state, whose passive state is the
    vacuum, so the ergotropy coincides with the stored energy.
    """
    return stored_energy(p, t)


def energy_record(p: BatteryParams, t: float) -> EnergyRecord:
    return EnergyRecord(
        t=float(t),
        E=float(stored_energy(p, t)),
        P_inst=float(instantaneous_power(p, t)),
        P_avg=float(average_power(p, t)),
    )
