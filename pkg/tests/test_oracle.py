import math

import numpy as np
import pytest
import scipy.linalg

from pulsed_battery import energetics
from pulsed_battery.model import BatteryParams
from pulsed_battery.oracle import (
    CutoffError,
    FockConfig,
    IntegrationError,
    annihilation,
    check_density_matrix,
    coherent_amplitudes,
    ergotropy,
    ergotropy_numeric,
    evolve_lindblad,
    factorization_residual,
    integrate_first_moments,
    liouvillian,
    pulse_initial_state,
    reduced_states,
)


def run(p, t_max, dt, n_cut=12, record_every=None):
    cfg = FockConfig(n_cut=n_cut, dt=dt, t_max=t_max, record_every=record_every)
    return evolve_lindblad(pulse_initial_state(p, cfg), p, cfg)


class TestFirstMomentOracle:
    def test_initial_condition(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1, Omega=0.7)
        tr = integrate_first_moments(p, 1e-3, 1.0)
        assert tr.a[0] == -0.7j and tr.b[0] == 0

    def test_charger_node_at_ep(self):
        p = BatteryParams(omega_b=5, g=0.25, gamma=1)
        tr = integrate_first_moments(p, 1e-3, 4.0)
        assert tr.t[-1] == pytest.approx(4.0, rel=1e-15)
        assert abs(tr.a[-1]) < 1e-8

    def test_holder_population(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1)
        tr = integrate_first_moments(p, 1e-3, 1.0)
        assert abs(tr.b[-1]) ** 2 == pytest.approx(abs(energetics.first_moments(p, 1.0).b) ** 2, abs=1e-8)
        assert abs(tr.b[-1]) ** 2 == pytest.approx(0.43916, abs=1e-5)

    def test_hits_t_max_exactly(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1)
        tr = integrate_first_moments(p, 1e-3, 0.9995)
        assert tr.t[-1] == pytest.approx(0.9995, rel=1e-15)

    def test_step_guard(self):
        with pytest.raises(ValueError):
            integrate_first_moments(BatteryParams(omega_b=5, g=1, gamma=1), 0.1, 1.0)


class TestInitialState:
    def test_no_pulse_is_vacuum(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1, Omega=0.0)
        rho = pulse_initial_state(p, FockConfig(n_cut=4))
        assert rho[0, 0] == 1
        assert np.count_nonzero(rho) == 1

    def test_unit_pulse_moments(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1, Omega=1.0)
        n_cut = 20
        rho = pulse_initial_state(p, FockConfig(n_cut=n_cut))
        rho_a, rho_b = reduced_states(rho, n_cut)
        a = annihilation(n_cut).toarray()
        assert np.trace(a @ rho_a) == pytest.approx(-1j, abs=1e-12)
        assert np.trace(a.T @ a @ rho_a).real == pytest.approx(1.0, abs=1e-12)
        assert np.trace(a.T @ a @ rho_b).real == 0
        assert 1 - np.trace(rho).real < 1e-10

    def test_amplitudes_match_displacement_operator(self):
        big = 60
        a = annihilation(big).toarray()
        alpha = -1.3j
        D = scipy.linalg.expm(alpha * a.T - np.conj(alpha) * a)
        vacuum = np.zeros(big + 1)
        vacuum[0] = 1
        ref = (D @ vacuum)[:16]
        assert np.max(np.abs(coherent_amplitudes(alpha, 15) - ref)) < 1e-12

    def test_cutoff_too_small(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1, Omega=1.5)
        with pytest.raises(CutoffError):
            pulse_initial_state(p, FockConfig(n_cut=6))


class TestLindblad:
    def test_liouvillian_preserves_trace(self):
        p = BatteryParams(omega_b=2, g=0.7, gamma=0.9)
        n_cut = 4
        d = (n_cut + 1) ** 2
        L = liouvillian(p, n_cut)
        identity = np.eye(d).ravel()
        # d/dt Tr(rho) = vec(I)^T L vec(rho) must vanish for every rho
        assert np.max(np.abs(identity @ L.toarray())) < 1e-12

    def test_lossless_swap(self):
        p = BatteryParams(omega_b=1, g=1, gamma=0)
        # at n_cut = 12 the truncated coherent tail alone leaves a ~1e-9 residual
        tr = run(p, math.pi / 2, 2.5e-3, n_cut=16)
        assert tr.n_b[-1] == pytest.approx(1.0, abs=1e-8)
        assert tr.n_a[-1] == pytest.approx(0.0, abs=1e-8)
        assert factorization_residual(tr) < 1e-10

    def test_headline_point(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1)
        tr = run(p, 1.0, 2e-3)
        assert tr.t[-1] == pytest.approx(1.0)
        assert tr.n_b[-1] == pytest.approx(0.43916014, abs=1e-4)
        assert tr.n_b[-1] == pytest.approx(energetics.stored_energy(p, 1.0) / 5, abs=1e-8)
        assert factorization_residual(tr) < 1e-6
        assert np.max(np.abs(tr.var_nb - tr.n_b)) < 1e-5

    def test_decoupled_holder_stays_empty(self):
        p = BatteryParams(omega_b=1, g=0, gamma=1)
        tr = run(p, 2.0, 1e-2)
        assert np.max(np.abs(tr.n_b)) < 1e-14

    def test_no_pulse(self):
        p = BatteryParams(omega_b=1, g=1, gamma=1, Omega=0)
        tr = run(p, 1.0, 1e-2, n_cut=3)
        assert factorization_residual(tr) == 0
        assert np.max(np.abs(tr.n_b)) == 0

    def test_cutoff_insensitivity(self):
        p = BatteryParams(omega_b=1, g=1, gamma=1, Omega=1.0)
        lo = run(p, 1.0, 1e-2, n_cut=12, record_every=10)
        hi = run(p, 1.0, 1e-2, n_cut=16, record_every=10)
        for field in ("a", "b", "n_a", "n_b", "var_nb"):
            assert np.max(np.abs(getattr(lo, field) - getattr(hi, field))) <= 1e-8, field

    def test_step_guard(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1)
        cfg = FockConfig(n_cut=3, dt=0.01, t_max=1.0)
        with pytest.raises(ValueError):
            evolve_lindblad(pulse_initial_state(p.replace(Omega=0), cfg), p, cfg)

    def test_unstable_step_detected(self):
        p = BatteryParams(omega_b=5, g=1, gamma=1, Omega=0.5)
        cfg = FockConfig(n_cut=10, dt=0.5, t_max=50.0, record_every=1)
        with pytest.raises(IntegrationError):
            evolve_lindblad(pulse_initial_state(p, cfg), p, cfg, enforce_step_limit=False)

    def test_final_state_is_physical(self):
        p = BatteryParams(omega_b=5, g=0.5, gamma=1)
        # RK4 is not positivity preserving; the negative-eigenvalue defect shrinks as dt**4
        tr = run(p, 0.5, 1e-3)
        check_density_matrix(tr.final_state)


class TestErgotropy:
    def test_vacuum(self):
        rho = np.zeros((5, 5))
        rho[0, 0] = 1
        assert ergotropy(rho, 3.0) == 0

    def test_maximally_mixed_qubit(self):
        assert ergotropy(np.eye(2) / 2, 1.0) == 0

    def test_population_inverted_qubit(self):
        assert ergotropy(np.diag([0.0, 1.0]), 2.0) == pytest.approx(2.0)

    def test_pure_coherent_state(self):
        beta = math.sqrt(0.1353)
        c = coherent_amplitudes(beta, 25)
        rho_b = np.outer(c, c.conj())
        assert ergotropy(rho_b, 1.0) == pytest.approx(0.1353, abs=1e-12)

    def test_evolved_state_at_ep_optimum(self):
        p = BatteryParams(omega_b=1, g=0.25, gamma=1)
        tr = run(p, 4.0, 5e-3)
        assert ergotropy_numeric(tr.final_state, p) == pytest.approx(math.exp(-2), abs=1e-6)

    def test_lossless_full_charge(self):
        p = BatteryParams(omega_b=1, g=1, gamma=0)
        tr = run(p, math.pi / 2, 2.5e-3)
        assert ergotropy_numeric(tr.final_state, p) == pytest.approx(1.0, abs=1e-7)


class TestDensityMatrixCheck:
    def test_rejects_non_hermitian(self):
        with pytest.raises(IntegrationError):
            check_density_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_rejects_bad_trace(self):
        with pytest.raises(IntegrationError):
            check_density_matrix(np.eye(2))

    def test_rejects_negative(self):
        with pytest.raises(IntegrationError):
            check_density_matrix(np.diag([1.5, -0.5]))
