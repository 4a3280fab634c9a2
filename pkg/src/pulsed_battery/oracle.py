"""Numerical oracles that never touch the closed forms.

Two independent routes to the battery dynamics:

* :func:`integrate_first_moments` -- fixed-step RK4 on the two-component
  linear system ``i d/dt psi = H psi`` for ``psi = (<a>, <b>)``.
* :func:`evolve_lindblad` -- fixed-step RK4 on the full master equation for
  the two-mode density matrix, truncated at ``n_cut`` photons per mode.

The delta pulse is not integrated numerically.  ``exp(-i Omega (a + a^dagger))``
acting on the vacuum is the displacement ``D(-i Omega)``, so the post-pulse
state is the coherent state ``|-i Omega> (x) |0>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from .model import BatteryParams, dynamical_matrix

#: Largest allowed ``dt * max(omega_b, g, gamma)``.
MAX_STEP_PRODUCT = 1e-2
NORM_DEFICIT_TOL = 1e-10
TRACE_TOL = 1e-6
HERMITICITY_TOL = 1e-9


class CutoffError(ValueError):
    """The Fock cutoff is too small for the requested pulse strength."""


class IntegrationError(RuntimeError):
    """The density matrix drifted out of the physical set during integration."""


@dataclass(frozen=True)
class FockConfig:
    """Discretisation of the master equation.

    ``record_every`` is the number of RK4 steps between recorded samples; by
    default about 200 samples are kept.
    """

    n_cut: int = 12
    dt: float = 1e-3
    t_max: float = 10.0
    record_every: Optional[int] = None

    def __post_init__(self):
        if self.n_cut < 1:
            raise ValueError("n_cut must be at least 1")
        if not (self.dt > 0 and self.t_max > 0):
            raise ValueError("dt and t_max must be positive")

    @property
    def dim(self) -> int:
        return (self.n_cut + 1) ** 2

    @property
    def n_steps(self) -> int:
        return max(1, math.ceil(self.t_max / self.dt - 1e-9))

    @property
    def stride(self) -> int:
        if self.record_every is not None:
            return max(1, int(self.record_every))
        return max(1, self.n_steps // 200)

    def validate(self, p: BatteryParams):
        check_step(p, self.dt)


@dataclass
class MomentTrace:
    """Time series of moments; second-moment fields are ``None`` for the 2x2 oracle."""

    t: np.ndarray
    a: np.ndarray
    b: np.ndarray
    n_a: Optional[np.ndarray] = None
    n_b: Optional[np.ndarray] = None
    var_nb: Optional[np.ndarray] = None
    holder_states: Optional[np.ndarray] = None
    final_state: Optional[np.ndarray] = None


def check_step(p: BatteryParams, dt: float):
    fastest = max(p.omega_b, p.g, p.gamma)
    if dt * fastest > MAX_STEP_PRODUCT * (1 + 1e-12):
        raise ValueError(
            f"dt={dt} too large: dt*max(omega_b, g, gamma) = {dt * fastest:.3g} > {MAX_STEP_PRODUCT}"
        )


def rk4_step(f: Callable, y, dt: float):
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


# -- first moments -------------------------------------------------------------

def integrate_first_moments(p: BatteryParams, dt: float, t_max: float,
                            record_every: int = 1) -> MomentTrace:
    """RK4 for ``(<a>, <b>)`` from ``(-i Omega, 0)`` at ``t = 0+``.

    ``dt`` is shrunk slightly if needed so that ``t_max`` is hit exactly.
    """
    check_step(p, dt)
    n = max(1, math.ceil(t_max / dt - 1e-9))
    h = t_max / n
    H = dynamical_matrix(p)
    # i psi' = H psi, written out on complex scalars to keep the loop cheap
    m00, m01 = -1j * H[0, 0], -1j * H[0, 1]
    m10, m11 = -1j * H[1, 0], -1j * H[1, 1]
    a, b = -1j * p.Omega + 0j, 0j
    n_rec = n // record_every + 1
    ts = np.empty(n_rec)
    A = np.empty(n_rec, dtype=complex)
    B = np.empty(n_rec, dtype=complex)
    ts[0], A[0], B[0] = 0.0, a, b
    j = 1
    half = 0.5 * h
    for i in range(1, n + 1):
        ka1 = m00 * a + m01 * b
        kb1 = m10 * a + m11 * b
        a2, b2 = a + half * ka1, b + half * kb1
        ka2 = m00 * a2 + m01 * b2
        kb2 = m10 * a2 + m11 * b2
        a3, b3 = a + half * ka2, b + half * kb2
        ka3 = m00 * a3 + m01 * b3
        kb3 = m10 * a3 + m11 * b3
        a4, b4 = a + h * ka3, b + h * kb3
        ka4 = m00 * a4 + m01 * b4
        kb4 = m10 * a4 + m11 * b4
        a = a + h / 6 * (ka1 + 2 * ka2 + 2 * ka3 + ka4)
        b = b + h / 6 * (kb1 + 2 * kb2 + 2 * kb3 + kb4)
        if i % record_every == 0 and j < n_rec:
            ts[j], A[j], B[j] = i * h, a, b
            j += 1
    return MomentTrace(t=ts[:j], a=A[:j], b=B[:j], n_a=np.abs(A[:j]) ** 2, n_b=np.abs(B[:j]) ** 2)


# -- Fock space ----------------------------------------------------------------

def annihilation(n_cut: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, n_cut + 1, dtype=float)), 1, format="csr")


def mode_operators(n_cut: int) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """``a`` (charger) and ``b`` (holder) on the product basis ``|n_a, n_b>``."""
    a1 = annihilation(n_cut)
    eye = sp.identity(n_cut + 1, format="csr")
    return sp.kron(a1, eye, format="csr"), sp.kron(eye, a1, format="csr")


def hamiltonian(p: BatteryParams, n_cut: int) -> sp.csr_matrix:
    """Post-pulse Hamiltonian ``omega_b (a^+a + b^+b) + g (a^+b + b^+a)``."""
    a, b = mode_operators(n_cut)
    ad, bd = a.conj().T, b.conj().T
    return (p.omega_b * (ad @ a + bd @ b) + p.g * (ad @ b + bd @ a)).tocsr()


def liouvillian(p: BatteryParams, n_cut: int) -> sp.csr_matrix:
    """Superoperator acting on row-major ``rho.ravel()``.

    Uses ``vec(A rho B) = (A kron B^T) vec(rho)``.
    """
    a, _ = mode_operators(n_cut)
    H = hamiltonian(p, n_cut)
    eye = sp.identity(H.shape[0], format="csr")
    na = (a.conj().T @ a).tocsr()
    L = -1j * (sp.kron(H, eye) - sp.kron(eye, H.T))
    L = L + p.gamma / 2 * (
        2 * sp.kron(a, a.conj()) - sp.kron(na, eye) - sp.kron(eye, na.T)
    )
    L = L.tocsr()
    L.sum_duplicates()
    L.eliminate_zeros()
    return L


def coherent_amplitudes(alpha: complex, n_cut: int) -> np.ndarray:
    """Fock amplitudes ``exp(-|alpha|^2/2) alpha^n / sqrt(n!)`` for ``n <= n_cut``."""
    c = np.empty(n_cut + 1, dtype=complex)
    c[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, n_cut + 1):
        c[n] = c[n - 1] * alpha / math.sqrt(n)
    return c


def pulse_initial_state(p: BatteryParams, cfg: FockConfig) -> np.ndarray:
    """Density matrix right after the pulse: ``|-i Omega><-i Omega| (x) |0><0|``.

    Raises
    ------
    CutoffError
        If the truncated coherent state misses more than 1e-10 of its norm.
    """
    c = coherent_amplitudes(-1j * p.Omega, cfg.n_cut)
    deficit = 1.0 - float(np.sum(np.abs(c) ** 2))
    if deficit > NORM_DEFICIT_TOL:
        raise CutoffError(
            f"n_cut={cfg.n_cut} loses {deficit:.2e} of the norm for Omega={p.Omega}"
        )
    vac = np.zeros(cfg.n_cut + 1)
    vac[0] = 1.0
    psi = np.kron(c, vac)
    return np.outer(psi, psi.conj())


def reduced_states(rho: np.ndarray, n_cut: int) -> tuple[np.ndarray, np.ndarray]:
    """Partial traces ``(rho_a, rho_b)`` of a two-mode density matrix."""
    d = n_cut + 1
    r = rho.reshape(d, d, d, d)
    return np.einsum("ijkj->ik", r), np.einsum("ijik->jk", r)


def holder_state(rho: np.ndarray, n_cut: int) -> np.ndarray:
    return reduced_states(rho, n_cut)[1]


def _lowering_expectation(rho1: np.ndarray) -> complex:
    # Tr(a rho) = sum_k sqrt(k+1) rho[k+1, k]
    k = np.arange(1, rho1.shape[0])
    return complex(np.sum(np.sqrt(k) * np.diagonal(rho1, -1)))


def check_density_matrix(rho: np.ndarray, trace_tol: float = TRACE_TOL,
                         herm_tol: float = 1e-12, pos_tol: float = 1e-8):
    """Raise ``IntegrationError`` unless ``rho`` is Hermitian, normalised and positive."""
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > herm_tol:
        raise IntegrationError(f"density matrix not Hermitian: {herm:.2e}")
    tr = float(np.trace(rho).real)
    if not (1 - trace_tol <= tr <= 1 + trace_tol):
        raise IntegrationError(f"trace {tr!r} outside tolerance")
    lam = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if lam.min() < -pos_tol:
        raise IntegrationError(f"negative eigenvalue {lam.min():.2e}")


def evolve_lindblad(rho0: np.ndarray, p: BatteryParams, cfg: FockConfig,
                    enforce_step_limit: bool = True) -> MomentTrace:
    """Fixed-step RK4 propagation of the master equation from ``rho0``.

    Samples ``<a>``, ``<b>``, ``<a^+a>``, ``<b^+b>``, ``Var(b^+b)`` and the
    reduced holder state every ``cfg.stride`` steps.  ``enforce_step_limit``
    may be switched off for step-size studies that deliberately use coarse
    steps; the stability checks below stay active.

    Raises
    ------
    IntegrationError
        If the trace drifts by more than 1e-6 or Hermiticity by more than 1e-9;
        both indicate a step size outside RK4's stability region.
    """
    if enforce_step_limit:
        cfg.validate(p)
    d = cfg.n_cut + 1
    L = liouvillian(p, cfg.n_cut)
    n = cfg.n_steps
    h = cfg.t_max / n
    stride = cfg.stride
    number = np.arange(d, dtype=float)

    rows = []

    def record(t, y):
        rho = y.reshape(d * d, d * d)
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        tr = float(np.trace(rho).real)
        if herm > HERMITICITY_TOL or abs(tr - 1) > TRACE_TOL:
            raise IntegrationError(
                f"at t={t:.4g}: trace={tr:.10f}, hermiticity defect={herm:.2e}; reduce dt"
            )
        rho_a, rho_b = reduced_states(rho, cfg.n_cut)
        pa = np.diagonal(rho_a).real
        pb = np.diagonal(rho_b).real
        nb = float(pb @ number)
        rows.append((
            t,
            _lowering_expectation(rho_a),
            _lowering_expectation(rho_b),
            float(pa @ number),
            nb,
            float(pb @ number**2) - nb * nb,
            rho_b.copy(),
        ))

    y = np.ascontiguousarray(rho0, dtype=complex).ravel().copy()
    matvec = L.__matmul__
    record(0.0, y)
    for i in range(1, n + 1):
        y = rk4_step(matvec, y, h)
        if i % stride == 0 or i == n:
            record(i * h, y)

    t, a, b, na, nb, var, states = zip(*rows)
    return MomentTrace(
        t=np.array(t),
        a=np.array(a),
        b=np.array(b),
        n_a=np.array(na),
        n_b=np.array(nb),
        var_nb=np.array(var),
        holder_states=np.array(states),
        final_state=y.reshape(d * d, d * d),
    )


# -- derived observables ---------------------------------------------------------

def ergotropy(rho_b: np.ndarray, omega_b: float) -> float:
    """Ergotropy of a single-oscillator state ``rho_b`` with ``H = omega_b b^+b``.

    Mean energy minus the energy of the passive state, which pairs the
    populations sorted in descending order with the ascending ladder.
    """
    energies = omega_b * np.arange(rho_b.shape[0], dtype=float)
    mean = float(np.diagonal(rho_b).real @ energies)
    lam = np.sort(np.linalg.eigvalsh(0.5 * (rho_b + rho_b.conj().T)))[::-1]
    return max(0.0, mean - float(lam @ energies))


def ergotropy_numeric(rho: np.ndarray, p: BatteryParams) -> float:
    """Ergotropy of the holder's reduced state taken from a two-mode ``rho``."""
    d = math.isqrt(rho.shape[0])
    return ergotropy(holder_state(rho, d - 1), p.omega_b)


def ergotropy_series(trace: MomentTrace, p: BatteryParams) -> np.ndarray:
    return np.array([ergotropy(s, p.omega_b) for s in trace.holder_states])


def factorization_residual(trace: MomentTrace) -> float:
    """Worst ``|<b^+b> - |<b>|^2|`` over the trace (zero for a coherent holder)."""
    return float(np.max(np.abs(trace.n_b - np.abs(trace.b) ** 2)))
