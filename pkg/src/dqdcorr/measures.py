"""Two-qubit correlation measures: concurrence, EoF, mutual information, discord.

Discord uses rank-one projective measurements on one qubit (B by default). The
classical correlation is maximised over the Bloch direction of the measurement
with a coarse (theta, phi) grid followed by Nelder-Mead refinement.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .qcore import (
    I2,
    SY,
    entropy_from_eigenvalues,
    binary_entropy,
    bloch_decomposition,
    hermitian_eigendecomposition,
    kron,
    partial_trace,
    von_neumann_entropy,
)

SYSY = kron(SY, SY)
CLIP_TOL = 1e-9
# entropies are only meaningful to ~1e-12 bits; below that the landscape is rounding noise
FLAT_TOL = 1e-12


class OptimizerError(RuntimeError):
    pass


@dataclass(frozen=True)
class MeasurementAngles:
    """Projective basis |p0> = cos(theta/2)|u> + e^{i phi} sin(theta/2)|d>, |p1> orthogonal."""

    theta: float
    phi: float

    @classmethod
    def wrapped(cls, theta, phi):
        # fold arbitrary angles back into theta in [0, pi], phi in [0, 2 pi)
        n = _direction(theta, phi)
        theta = float(np.arccos(np.clip(n[2], -1, 1)))
        phi = float(np.arctan2(n[1], n[0]) % (2 * np.pi)) if np.hypot(n[0], n[1]) > 0 else 0.0
        return cls(theta, phi)

    def direction(self):
        return _direction(self.theta, self.phi)

    def projectors(self):
        p0 = np.array([np.cos(self.theta / 2), np.exp(1j * self.phi) * np.sin(self.theta / 2)])
        pi0 = np.outer(p0, p0.conj())
        return pi0, I2 - pi0


@dataclass(frozen=True)
class OptimizerSettings:
    grid_size: int = 64
    n_starts: int = 3
    xatol: float = 1e-6
    maxiter: int = 2000
    measured: str = "B"


@dataclass(frozen=True)
class CorrelationReport:
    mutual_info: float
    classical_corr: float
    discord: float
    concurrence: float
    eof: float
    argmin_angles: MeasurementAngles = field(compare=False)


def _direction(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _clip(x, name):
    if x < -CLIP_TOL:
        raise ValueError(f"{name} is negative beyond tolerance: {x:.3e}")
    return max(0.0, float(x))


def concurrence(rho):
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are taken as singular values of psi^T (sy x sy) psi with rho = psi psi^dag,
    which avoids square roots of the (noisy, near-zero) eigenvalues of rho rho~.
    """
    w, v = np.linalg.eigh(0.5 * (rho + np.conj(np.transpose(rho))))
    psi = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(psi.T @ SYSY @ psi, compute_uv=False)
    return float(np.clip(lam[0] - lam[1:].sum(), 0.0, 1.0))


def eof_from_concurrence(c):
    c = np.clip(np.asarray(c, dtype=float), 0.0, 1.0)
    return binary_entropy((1 + np.sqrt(1 - c**2)) / 2)


def entanglement_of_formation(rho):
    return float(eof_from_concurrence(concurrence(rho)))


def mutual_information(rho):
    """I(A:B) = S(A) + S(B) - S(AB), in bits."""
    rho = np.asarray(rho, dtype=complex)
    s_a = von_neumann_entropy(partial_trace(rho, "A"))
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    s_ab = von_neumann_entropy(rho)
    return _clip(s_a + s_b - s_ab, "mutual information")


def post_measurement_conditional_entropy(rho, angles, measured="B"):
    """sum_j p_j S(rho_{unmeasured | j}) after projective measurement ``angles``."""
    rho = np.asarray(rho, dtype=complex)
    total = 0.0
    for proj in angles.projectors():
        if measured == "B":
            op, keep = kron(I2, proj), "A"
        elif measured == "A":
            op, keep = kron(proj, I2), "B"
        else:
            raise ValueError(f"measured must be 'A' or 'B', got {measured!r}")
        cond = partial_trace(op @ rho @ op, keep)
        p = float(np.real(np.trace(cond)))
        if p < 1e-12:
            continue
        evals, _ = hermitian_eigendecomposition(cond / p)
        total += p * entropy_from_eigenvalues(evals)
    return total


class _ConditionalEntropy:
    """Vectorised S(unmeasured | measurement along n) from the Bloch decomposition."""

    def __init__(self, rho, measured):
        a, b, t = bloch_decomposition(rho)
        if measured == "B":
            self.r, self.m, self.t = a, b, t
        elif measured == "A":
            self.r, self.m, self.t = b, a, t.T
        else:
            raise ValueError(f"measured must be 'A' or 'B', got {measured!r}")
        self._lists = (self.r.tolist(), self.m.tolist(), self.t.tolist())

    def __call__(self, n):
        n = np.asarray(n, dtype=float)
        bn = n @ self.m
        tn = n @ self.t.T
        total = 0.0
        for s in (1.0, -1.0):
            p = 0.5 * (1 + s * bn)
            with np.errstate(divide="ignore", invalid="ignore"):
                r = np.linalg.norm(self.r + s * tn, axis=-1) / (1 + s * bn)
            h = binary_entropy((1 + np.clip(np.nan_to_num(r), 0, 1)) / 2)
            total = total + np.where(p > 1e-12, p * h, 0.0)
        return total

    def at_angles(self, theta, phi):
        # scalar fast path for the local refinement
        st = math.sin(theta)
        n = (st * math.cos(phi), st * math.sin(phi), math.cos(theta))
        r, m, t = self._lists
        bn = m[0] * n[0] + m[1] * n[1] + m[2] * n[2]
        tn = [t[i][0] * n[0] + t[i][1] * n[1] + t[i][2] * n[2] for i in range(3)]
        total = 0.0
        for s in (1.0, -1.0):
            p = 0.5 * (1 + s * bn)
            if p <= 1e-12:
                continue
            v = [r[i] + s * tn[i] for i in range(3)]
            x = min(1.0, math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2) / (2 * p))
            q = 0.5 * (1 + x)
            if q < 1.0:
                total += p * (-q * math.log2(q) - (1 - q) * math.log2(1 - q))
        return total


def minimize_conditional_entropy(rho, opt=None):
    """Minimum post-measurement conditional entropy.

    Returns ``(refined_min, best_grid_value, angles)``.
    """
    opt = opt or OptimizerSettings()
    f = _ConditionalEntropy(rho, opt.measured)
    g = opt.grid_size
    thetas = (np.arange(g) + 0.5) * np.pi / g
    phis = np.arange(g) * 2 * np.pi / g
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    grid = f(_direction(th, ph)).ravel()
    order = np.argsort(grid)[: opt.n_starts]
    best_grid = float(grid[order[0]])
    if grid.max() - best_grid < FLAT_TOL:
        return best_grid, best_grid, MeasurementAngles(th.ravel()[order[0]], ph.ravel()[order[0]])

    objective = lambda x: f.at_angles(x[0], x[1])
    best_val, best_x = best_grid, (th.ravel()[order[0]], ph.ravel()[order[0]])
    step = np.pi / g
    for idx in order:
        x0 = np.array([th.ravel()[idx], ph.ravel()[idx]])
        simplex = np.array([x0, x0 + [step, 0], x0 + [0, 2 * step]])
        res = minimize(
            objective, x0, method="Nelder-Mead",
            options=dict(initial_simplex=simplex, xatol=opt.xatol, fatol=FLAT_TOL,
                         maxiter=opt.maxiter),
        )
        if not res.success:
            raise OptimizerError(f"Nelder-Mead did not converge: {res.message}")
        if res.fun < best_val:
            best_val, best_x = float(res.fun), res.x
    return best_val, best_grid, MeasurementAngles.wrapped(*best_x)


def classical_correlation(rho, opt=None):
    """J(A:B) = S(unmeasured) - min over projective measurements of the conditional entropy.

    Returns ``(value, angles)`` where ``angles`` attain the minimum.
    """
    opt = opt or OptimizerSettings()
    rho = np.asarray(rho, dtype=complex)
    keep = "A" if opt.measured == "B" else "B"
    s_keep = von_neumann_entropy(partial_trace(rho, keep))
    cond, _, angles = minimize_conditional_entropy(rho, opt)
    return _clip(s_keep - cond, "classical correlation"), angles


def quantum_discord(rho, opt=None):
    rho = np.asarray(rho, dtype=complex)
    mi = mutual_information(rho)
    cc, angles = classical_correlation(rho, opt)
    cc = min(cc, mi) if cc - mi < CLIP_TOL else cc
    c = concurrence(rho)
    return CorrelationReport(
        mutual_info=mi,
        classical_corr=cc,
        discord=_clip(mi - cc, "discord"),
        concurrence=c,
        eof=float(eof_from_concurrence(c)),
        argmin_angles=angles,
    )
