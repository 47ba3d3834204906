"""Two coupled double-quantum-dot charge qubits.

    H_S = delta (sx1 + sx2) + j sz1 sz2 + (epsilon / 2)(sz1 + sz2)

in units with hbar = 1 and time measured in tau. ``epsilon`` is carried for
completeness only; it defaults to zero, where the propagator has a closed form.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .qcore import I2, SX, SY, SZ, dagger, kron

SX1, SX2 = kron(SX, I2), kron(I2, SX)
SZ1, SZ2 = kron(SZ, I2), kron(I2, SZ)
SXSX, SYSY, SZSZ = kron(SX, SX), kron(SY, SY), kron(SZ, SZ)
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]

COUPLING_OPERATORS = {
    "common": SZ1 + SZ2,
    "qubit1": SZ1,
    "qubit2": SZ2,
}


@dataclass(frozen=True)
class ModelParams:
    delta: float
    j: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.j >= 0:
            raise ValueError(f"j must be non-negative, got {self.j}")

    @property
    def omega(self):
        return float(np.sqrt(self.j**2 + 4 * self.delta**2))


def system_hamiltonian(p):
    h = p.delta * (SX1 + SX2) + p.j * SZSZ
    if p.epsilon:
        h = h + 0.5 * p.epsilon * (SZ1 + SZ2)
    return h


def closed_form_propagator(p, t):
    """exp(-i H_S t) from its expansion in I, sx sums, sxsx, sysy and szsz.

    ``t`` may be a scalar (returns 4x4) or an array (returns ``t.shape + (4, 4)``).
    """
    if p.epsilon != 0:
        raise ValueError("closed-form propagator requires epsilon == 0; use propagator()")
    t = np.asarray(t, dtype=float)
    d, j, om = p.delta, p.j, p.omega
    co, cj = np.cos(om * t), np.cos(j * t)
    so, sj = np.sin(om * t), np.sin(j * t)
    c = lambda x: np.asarray(x)[..., None, None]
    return (
        c(0.5 * (co + cj)) * np.eye(4)
        - 1j * c(d / om * so) * (SX1 + SX2)
        + c(0.5 * (co - cj)) * SXSX
        - 0.5j * c(sj - j / om * so) * SYSY
        - 0.5j * c(sj + j / om * so) * SZSZ
    )


def numerical_propagator(p, t):
    """Scaling-and-squaring matrix exponential of -i H_S t (any epsilon)."""
    h = system_hamiltonian(p)
    t = np.asarray(t, dtype=float)
    if t.ndim == 0:
        return expm(-1j * h * float(t))
    return np.stack([expm(-1j * h * tk) for tk in t.ravel()]).reshape(t.shape + (4, 4))


def propagator(p, t):
    if p.epsilon == 0:
        return closed_form_propagator(p, t)
    return numerical_propagator(p, t)


def interaction_coupling(p, t, which="common"):
    """Lambda(t) = U_S(t)^dag A U_S(t) with A = sz1 + sz2, sz1 or sz2."""
    try:
        a = COUPLING_OPERATORS[which]
    except KeyError:
        raise ValueError(f"unknown coupling {which!r}; expected one of {list(COUPLING_OPERATORS)}")
    u = propagator(p, t)
    return dagger(u) @ a @ u


def max_entanglement_time(p, regime, n=0):
    """Approximate time of the n-th maximally entangled state reached from |ud>.

    weak   (j <= delta/2): t = (pi/2 + n pi) / j
    strong (j >= 2 delta): t = (j / delta^2)(pi/4 + n pi/2)
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n}")
    if regime == "weak":
        if not 0 < p.j <= p.delta / 2:
            raise ValueError(f"weak regime needs 0 < j <= delta/2 (j={p.j}, delta={p.delta})")
        return (np.pi / 2 + n * np.pi) / p.j
    if regime == "strong":
        if not p.j >= 2 * p.delta:
            raise ValueError(f"strong regime needs j >= 2 delta (j={p.j}, delta={p.delta})")
        return p.j / p.delta**2 * (np.pi / 4 + n * np.pi / 2)
    raise ValueError(f"regime must be 'weak' or 'strong', got {regime!r}")
