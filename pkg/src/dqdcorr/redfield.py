"""Time-dependent Redfield equation in the interaction picture.

    d rho_I / dt = [Lambda(t), rho_I M(t)] + [M(t)^dag rho_I, Lambda(t)],
    M(t) = int_0^t dt' D(t - t') Lambda(t')

The state enters only at time t, so the memory integral only shapes the
coefficients M(t). Writing Lambda(t') in the eigenbasis of H_S turns M(t) into
scalar integrals G(w, t) = int_0^t D(s) e^{-iws} ds over the Bohr frequencies w,
which are accumulated panel by panel on the half-step grid and then fed to a
fixed-step RK4.

For independent baths each qubit has its own coupling sz_q and M_q, and the two
contributions are summed with no cross terms.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid

from .bath import kernel_closed_form
from .model import COUPLING_OPERATORS, interaction_coupling, propagator, system_hamiltonian
from .qcore import PositivityError, dagger, hermitian_eigendecomposition

QUADRATURES = ("gauss", "simpson", "trapezoid")
TRACE_DRIFT_LIMIT = 1e-6
_GAUSS_NODES = 12


class IntegrationError(RuntimeError):
    def __init__(self, message, time=None):
        self.time = time
        super().__init__(message if time is None else f"{message} (t={time:.6g})")


@dataclass(frozen=True)
class IntegratorConfig:
    t_final: float
    dt: float = 0.005
    quadrature: str = "gauss"
    memory_window: Optional[float] = None
    positivity_tol: float = 1e-3

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.t_final >= self.dt:
            raise ValueError(f"t_final must be >= dt, got {self.t_final}")
        if self.quadrature not in QUADRATURES:
            raise ValueError(f"quadrature must be one of {QUADRATURES}, got {self.quadrature!r}")
        if self.memory_window is not None and self.memory_window <= 0:
            raise ValueError("memory_window must be positive")
        if self.positivity_tol < 0:
            raise ValueError("positivity_tol must be non-negative")

    @property
    def n_steps(self):
        return int(round(self.t_final / self.dt))


@dataclass
class Trajectory:
    t: np.ndarray
    rho_i: np.ndarray
    rho_s: np.ndarray
    trace_error: np.ndarray
    min_eigenvalue: np.ndarray
    purity: np.ndarray
    hermiticity_error: np.ndarray

    def __len__(self):
        return len(self.t)

    def states(self, picture="schrodinger"):
        if picture == "schrodinger":
            return self.rho_s
        if picture == "interaction":
            return self.rho_i
        raise ValueError(f"picture must be 'schrodinger' or 'interaction', got {picture!r}")


def coupling_names(bath):
    return ("common",) if bath.topology == "common" else ("qubit1", "qubit2")


def _kernel_panel_integrals(bath, freqs, h, n_panels, omega_max):
    """int over each panel [k h, (k+1) h] of D(s) e^{-iws}, shape (n_panels, len(freqs))."""
    # sub-panels short compared with the kernel width 1/wc and the fastest Bohr period
    width = min(h, 0.5 / bath.omega_c, 0.5 / max(omega_max, 1e-12))
    n_sub = int(np.ceil(h / width - 1e-9))
    x, w = np.polynomial.legendre.leggauss(_GAUSS_NODES)
    sub = h / n_sub
    offsets = (np.arange(n_sub)[:, None] * sub + 0.5 * sub * (x + 1)).ravel()
    weights = np.tile(0.5 * sub * w, n_sub)
    out = np.empty((n_panels, len(freqs)), dtype=complex)
    chunk = max(1, 200_000 // offsets.size)
    for start in range(0, n_panels, chunk):
        k = np.arange(start, min(n_panels, start + chunk))
        s = k[:, None] * h + offsets[None, :]
        d = kernel_closed_form(bath, s) * weights
        out[k] = np.einsum("ks,ksf->kf", d, np.exp(-1j * s[:, :, None] * freqs))
    return out


def memory_integrals(bath, freqs, h, n_points, quadrature="gauss", memory_window=None):
    """G(w, t_k) = int_0^min(t_k, window) D(s) e^{-iws} ds on t_k = k h, k < n_points."""
    freqs = np.asarray(freqs, dtype=float)
    n_panels = n_points - 1
    if quadrature == "gauss":
        panels = _kernel_panel_integrals(bath, freqs, h, n_panels, np.abs(freqs).max(initial=0))
        g = np.vstack([np.zeros((1, len(freqs)), complex), np.cumsum(panels, axis=0)])
    else:
        s = np.arange(n_points) * h
        f = kernel_closed_form(bath, s)[:, None] * np.exp(-1j * s[:, None] * freqs)
        rule = cumulative_simpson if quadrature == "simpson" and n_points >= 3 else cumulative_trapezoid
        # scipy's cumulative_simpson drops imaginary parts, so integrate the two halves separately
        g = (rule(f.real, dx=h, axis=0, initial=0)
             + 1j * rule(f.imag, dx=h, axis=0, initial=0))
    if memory_window is not None:
        # window rounded to the grid
        kw = int(round(memory_window / h))
        if kw < n_points - 1:
            g[kw + 1:] = g[kw]
    return g


def memory_operators(model, bath, h, n_points, which, quadrature="gauss",
                     memory_window=None):
    """M(t_k) = int_0^t_k D(t_k - t') Lambda(t') dt' on a uniform grid, shape (n_points, 4, 4)."""
    energies, v = hermitian_eigendecomposition(system_hamiltonian(model))
    a = dagger(v) @ COUPLING_OPERATORS[which] @ v
    bohr = energies[:, None] - energies[None, :]
    keys = np.round(bohr, 12)
    freqs, inverse = np.unique(keys.ravel(), return_inverse=True)
    g = memory_integrals(bath, freqs, h, n_points, quadrature, memory_window)
    t = np.arange(n_points) * h
    coeff = g[:, inverse].reshape(n_points, 4, 4) * np.exp(1j * bohr[None] * t[:, None, None])
    return v @ (a * coeff) @ dagger(v)


def _generator(lams, mems, rho):
    out = np.zeros((4, 4), dtype=complex)
    for lam, mem in zip(lams, mems):
        rm = rho @ mem
        x = lam @ rm - rm @ lam
        out += x + x.conj().T
    return out


def redfield_generator(t, rho_i, model, bath, config):
    """d rho_I / dt at a single time, memory integral resolved on the config's half-step grid."""
    rho_i = np.asarray(rho_i, dtype=complex)
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0 or bath.eta == 0:
        return np.zeros((4, 4), dtype=complex)
    n_panels = max(1, int(np.ceil(t / (0.5 * config.dt) - 1e-9)))
    h = t / n_panels
    lams, mems = [], []
    for which in coupling_names(bath):
        lams.append(interaction_coupling(model, t, which))
        mems.append(memory_operators(model, bath, h, n_panels + 1, which, config.quadrature,
                                     config.memory_window)[-1])
    return _generator(lams, mems, rho_i)


def to_schrodinger(rho_i, t, model):
    u = propagator(model, t)
    return u @ np.asarray(rho_i, dtype=complex) @ dagger(u)


def evolve(initial, model, bath, config):
    """Integrate rho_I from t = 0 to ``config.t_final`` with fixed-step RK4."""
    rho = np.asarray(initial, dtype=complex)
    if config.memory_window is not None and config.memory_window < 10 / bath.omega_c:
        raise ValueError(f"memory_window must be >= 10/omega_c = {10 / bath.omega_c:g}")
    if abs(np.trace(rho) - 1) > 1e-8 or np.abs(rho - dagger(rho)).max() > 1e-10:
        raise ValueError("initial state must be Hermitian with unit trace")
    if np.linalg.eigvalsh(rho)[0] < -1e-12:
        raise ValueError("initial state is not positive semidefinite")

    n = config.n_steps
    dt = config.dt
    half = 0.5 * dt
    grid = np.arange(2 * n + 1) * half
    couplings = coupling_names(bath)
    lams = [interaction_coupling(model, grid, w) for w in couplings]
    if bath.eta == 0:
        mems = [np.zeros_like(l) for l in lams]
    else:
        mems = [memory_operators(model, bath, half, 2 * n + 1, w, config.quadrature,
                                 config.memory_window) for w in couplings]

    states = np.empty((n + 1, 4, 4), dtype=complex)
    states[0] = rho
    for step in range(n):
        k = 2 * step
        at = lambda i: ([l[i] for l in lams], [m[i] for m in mems])
        l0, m0 = at(k)
        l1, m1 = at(k + 1)
        l2, m2 = at(k + 2)
        k1 = _generator(l0, m0, rho)
        k2 = _generator(l1, m1, rho + half * k1)
        k3 = _generator(l1, m1, rho + half * k2)
        k4 = _generator(l2, m2, rho + dt * k3)
        rho = rho + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        states[step + 1] = rho

    t = grid[::2]
    u = propagator(model, t)
    rho_s = u @ states @ dagger(u)
    herm = np.abs(states - dagger(states)).max(axis=(1, 2))
    trace_err = np.abs(np.trace(states, axis1=1, axis2=2) - 1)
    min_eig = np.linalg.eigvalsh(0.5 * (states + dagger(states)))[:, 0]
    pur = np.real(np.einsum("kij,kji->k", states, states))

    bad = np.flatnonzero(trace_err > TRACE_DRIFT_LIMIT)
    if bad.size:
        raise IntegrationError(f"trace drifted by {trace_err[bad[0]]:.2e}", t[bad[0]])
    bad = np.flatnonzero(min_eig < -config.positivity_tol)
    if bad.size:
        raise PositivityError(float(min_eig[bad[0]]), config.positivity_tol, float(t[bad[0]]))

    return Trajectory(t=t, rho_i=states, rho_s=rho_s, trace_error=trace_err,
                      min_eigenvalue=min_eig, purity=pur, hermiticity_error=herm)
