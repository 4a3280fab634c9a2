"""Analytic energetics of a pulsed two-oscillator quantum battery.

A lossy charger oscillator, kicked by a delta pulse of strength ``Omega``,
passes energy at rate ``g`` to a lossless holder oscillator.  The package
provides the closed-form dynamics, the optimal charging times and two
independent numerical oracles to check them against.
"""
from .energetics import (
    EnergyRecord,
    FirstMoments,
    average_power,
    energy_record,
    ergotropy_analytic,
    first_moments,
    instantaneous_power,
    stored_energy,
)
from .model import (
    BatteryParams,
    EigenPair,
    Regime,
    RegimeData,
    classify_regime,
    eigenvalues,
    stable_C,
    stable_S,
)
from .optima import (
    Method,
    OptimaResult,
    TranscendentalConstants,
    approx_avg_power_time,
    asymptotics,
    dissipationless_avg_power_peak,
    numeric_optimum,
    optimal_avg_power_time,
    optimal_avg_power_value,
    optimal_energy_time,
    optimal_energy_value,
    optimal_inst_power_time,
    optimal_inst_power_value,
    optimize,
    solve_transcendental_constants,
)

__version__ = "0.1.0"
