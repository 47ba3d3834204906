"""Small dense linear algebra for one- and two-qubit density matrices.

Two-qubit matrices are 4x4 in the product basis

    |uu>, |ud>, |du>, |dd>      (u = spin up = right dot, d = spin down = left dot)

with qubit A (qubit 1) the left tensor factor. Every module in the package uses
this ordering. Entropies are in bits.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)

HERMITIAN_TOL = 1e-9
NEGATIVE_EIG_TOL = 1e-9


class NonHermitianError(ValueError):
    pass


class PositivityError(ValueError):
    """Raised when a state has an eigenvalue below the allowed tolerance."""

    def __init__(self, min_eigenvalue, tol, time=None):
        self.min_eigenvalue = min_eigenvalue
        self.tol = tol
        self.time = time
        where = "" if time is None else f" at t={time:.6g}"
        super().__init__(
            f"positivity violated{where}: min eigenvalue {min_eigenvalue:.3e} < -{tol:.1e}"
        )


def kron(*ops):
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def ket(spins):
    """Product ket from a string of 'u'/'d' labels, e.g. ``ket("ud")``."""
    table = {"u": UP, "d": DOWN}
    return kron(*[table[s][:, None] for s in spins]).ravel()


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def dagger(m):
    return np.swapaxes(np.conj(m), -1, -2)


def hermiticity_error(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - dagger(m))))


def hermitian_eigendecomposition(m, atol=HERMITIAN_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    err = hermiticity_error(m)
    if err > atol:
        raise NonHermitianError(f"matrix is not Hermitian (max deviation {err:.3e})")
    return np.linalg.eigh(0.5 * (m + m.conj().T))


def partial_trace(rho, which="A"):
    """Reduced state of qubit ``which`` ('A' = first factor, 'B' = second)."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if which == "A":
        return np.einsum("ijkj->ik", r)
    if which == "B":
        return np.einsum("jijk->ik", r)
    raise ValueError(f"which must be 'A' or 'B', got {which!r}")


def entropy_from_eigenvalues(evals):
    evals = np.asarray(evals, dtype=float)
    if evals.min() < -NEGATIVE_EIG_TOL:
        raise PositivityError(float(evals.min()), NEGATIVE_EIG_TOL)
    p = evals[evals > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def von_neumann_entropy(rho):
    """S(rho) = -Tr rho log2 rho, with 0 log 0 = 0."""
    evals, _ = hermitian_eigendecomposition(rho)
    return entropy_from_eigenvalues(evals)


def binary_entropy(p):
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -p * np.log2(p) - (1 - p) * np.log2(1 - p)
    return np.where((p <= 0) | (p >= 1), 0.0, h)


def purity(rho):
    rho = np.asarray(rho)
    return float(np.real(np.einsum("ij,ji->", rho, rho)))


def min_eigenvalue(rho):
    return float(np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))[0])


def project_to_physical(rho, tol=1e-3, time=None):
    """Clamp small negative eigenvalues to zero and renormalise.

    A state that is already positive semidefinite is returned unchanged (same
    values, not a recomputed reconstruction). Eigenvalues below ``-tol`` raise
    :class:`PositivityError`.
    """
    rho = np.asarray(rho, dtype=complex)
    evals, vecs = hermitian_eigendecomposition(rho)
    if evals[0] >= 0:
        return rho
    if evals[0] < -tol:
        raise PositivityError(float(evals[0]), tol, time)
    evals = np.clip(evals, 0.0, None)
    evals /= evals.sum()
    out = (vecs * evals) @ vecs.conj().T
    return 0.5 * (out + out.conj().T)


def bloch_decomposition(rho):
    """Return (a, b, T) with rho = (I + a.s x I + I x b.s + sum T_ij s_i x s_j) / 4."""
    # Tr(rho P) for every two-qubit Pauli string P = s_i x s_j, i, j in {0, x, y, z}
    coeffs = np.real(np.einsum("ij,pqji->pq", np.asarray(rho, dtype=complex), _PAULI_PRODUCTS))
    return coeffs[1:, 0], coeffs[0, 1:], coeffs[1:, 1:]


_PAULI_PRODUCTS = np.array([[np.kron(si, sj) for sj in (I2,) + PAULIS] for si in (I2,) + PAULIS])
