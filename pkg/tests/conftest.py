import numpy as np
import pytest

from dqdcorr.qcore import ket, projector


def random_density_matrix(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(rng):
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    return psi / np.linalg.norm(psi)


def random_unitary_2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def bell(name):
    s = 1 / np.sqrt(2)
    vecs = {
        "phi+": s * (ket("uu") + ket("dd")),
        "phi-": s * (ket("uu") - ket("dd")),
        "psi+": s * (ket("ud") + ket("du")),
        "psi-": s * (ket("ud") - ket("du")),
    }
    return vecs[name]


def werner(z):
    return z * projector(bell("psi-")) + (1 - z) * np.eye(4) / 4


@pytest.fixture
def rng():
    return np.random.default_rng(20260115)
