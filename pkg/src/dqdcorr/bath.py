"""Ohmic oscillator bath: spectral density, occupations and the correlation kernel.

The kernel multiplying the memory integral is

    D(s) = int_0^inf dw J(w) [ n(w) e^{-iws} + (n(w) + 1) e^{iws} ]
         = eta wc^2 / (1 - i wc s)^2 + (2 eta / beta^2) Re psi1(1 + 1/(beta wc) - i s/beta)

with J(w) = eta w exp(-w/wc), n(w) the Bose occupation and psi1 the trigamma
function. ``kernel_quadrature`` evaluates the integral directly and is only a
cross-check.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate

TOPOLOGIES = ("common", "independent")


@dataclass(frozen=True)
class BathParams:
    eta: float
    omega_c: float
    beta: float
    topology: str = "common"

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"topology must be one of {TOPOLOGIES}, got {self.topology!r}")


def spectral_density(b, omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("spectral density is defined for omega >= 0")
    return b.eta * omega * np.exp(-omega / b.omega_c)


def bose_occupation(beta, omega):
    omega = np.asarray(omega, dtype=float)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if np.any(omega <= 0):
        raise ValueError("Bose occupation diverges at omega <= 0")
    return 1.0 / np.expm1(beta * omega)


# Bernoulli numbers B_2 .. B_12
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730)
_SHIFT_TO = 10.0


def complex_trigamma(z):
    """psi1(z) = sum_{n>=0} 1/(n+z)^2 for Re z > 0 (scalar or array).

    Upward recurrence psi1(z) = psi1(z+1) + 1/z^2 until Re z >= 10, then the
    asymptotic expansion 1/z + 1/(2z^2) + sum_k B_2k / z^(2k+1).
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.real <= 0):
        raise ValueError("complex_trigamma requires Re z > 0")
    scalar = z.ndim == 0
    z = np.atleast_1d(z).copy()
    acc = np.zeros_like(z)
    nshift = np.maximum(0, np.ceil(_SHIFT_TO - z.real)).astype(int)
    for k in range(int(nshift.max(initial=0))):
        m = nshift > k
        acc[m] += 1.0 / z[m] ** 2
        z[m] += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    series = np.zeros_like(z)
    for bk in reversed(_BERNOULLI):
        series = (series + bk) * inv2
    out = acc + inv + 0.5 * inv2 + series * inv
    return out[0] if scalar else out


def kernel_closed_form(b, dt):
    """Correlation kernel D(dt) (units 1/tau^2); scalar or array ``dt``."""
    dt = np.asarray(dt, dtype=float)
    vacuum = b.eta * b.omega_c**2 / (1 - 1j * b.omega_c * dt) ** 2
    z = 1 + 1 / (b.beta * b.omega_c) - 1j * dt / b.beta
    thermal = 2 * b.eta / b.beta**2 * np.real(complex_trigamma(z))
    return vacuum + thermal


def _jn(b, w):
    # J(w) n(w), regular at w -> 0 where it tends to eta / beta
    w = np.asarray(w, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        x = b.beta * w
        out = b.eta * np.exp(-w / b.omega_c) * np.where(x > 0, w / np.expm1(x), 1 / b.beta)
    return out


def _fourier(f, dt, kind, scale):
    opts = dict(epsabs=1e-13 * scale, epsrel=1e-11, limit=400)
    if dt == 0:
        if kind == "sin":
            return 0.0
        val, err = integrate.quad(f, 0, np.inf, **opts)
    else:
        val, err = integrate.quad(f, 0, np.inf, weight=kind, wvar=abs(dt), limlst=200,
                                  epsabs=opts["epsabs"])
        if kind == "sin" and dt < 0:
            val = -val
    if not np.isfinite(val) or err > 1e-6 * max(abs(val), scale * 1e-3):
        raise RuntimeError(f"kernel quadrature did not converge (dt={dt}, {kind}: err={err:.2e})")
    return val


def kernel_quadrature_parts(b, dt):
    """(T1, T2) by direct quadrature of the occupation-weighted spectral integrals."""
    dt = float(dt)
    scale = b.eta * b.omega_c**2 + 1e-300
    jd = lambda w: b.eta * w * np.exp(-w / b.omega_c)
    jn = lambda w: float(_jn(b, w))
    n_cos = _fourier(jn, dt, "cos", scale)
    n_sin = _fourier(jn, dt, "sin", scale)
    j_cos = _fourier(jd, dt, "cos", scale)
    j_sin = _fourier(jd, dt, "sin", scale)
    t1 = n_cos - 1j * n_sin
    t2 = (n_cos + j_cos) + 1j * (n_sin + j_sin)
    return t1, t2


def kernel_quadrature(b, dt):
    t1, t2 = kernel_quadrature_parts(b, dt)
    return t1 + t2
