"""Light-cone basis, bilinear metric products and the Clifford algebra.

Conventions (frozen, see `conventions.py`):

    g = diag(+1, +1, -1, +1)        slots 0,1 transverse / 2,3 longitudinal
    eps  = (1, i, 0, 0)/sqrt2       transverse circular unit vector
    eps* = (1, -i, 0, 0)/sqrt2
    k    = (0, 0, -1, -1)           null wave vector, k.k = 0

All products are bilinear (no complex conjugation): dot(u, v) = sum g_mm u^m v^m.
Four-vectors are plain complex ndarrays of shape (4,) holding contravariant
components; 4x4 complex ndarrays stand in for spinor-space matrices.
"""

from __future__ import annotations

import numpy as np

from .errors import PoleError

METRIC = np.array([1.0, 1.0, -1.0, 1.0])

SQRT2 = np.sqrt(2.0)

EPS = np.array([1.0, 1.0j, 0.0, 0.0]) / SQRT2
EPS_CONJ = np.array([1.0, -1.0j, 0.0, 0.0]) / SQRT2
WAVE_K = np.array([0.0, 0.0, -1.0, -1.0], dtype=complex)

#: Real transverse polarization pair, e1 = (eps+eps*)/sqrt2, e2 = (eps-eps*)/(i sqrt2).
E1 = ((EPS + EPS_CONJ) / SQRT2).real.astype(complex)
E2 = ((EPS - EPS_CONJ) / (1j * SQRT2)).real.astype(complex)

_TRANSVERSE = (0, 1)
_LONGITUDINAL = (2, 3)


def vector(c0=0.0, c1=0.0, c2=0.0, c3=0.0) -> np.ndarray:
    return np.array([c0, c1, c2, c3], dtype=complex)


def dot(u: np.ndarray, v: np.ndarray) -> complex:
    """Bilinear metric product sum_m g_mm u_m v_m (never sesquilinear)."""
    return complex(np.sum(METRIC * np.asarray(u) * np.asarray(v)))


def transverse_project(x: np.ndarray) -> np.ndarray:
    """eps * dot(eps*, x) + eps* * dot(eps, x); zeroes the longitudinal slots."""
    return EPS * dot(EPS_CONJ, x) + EPS_CONJ * dot(EPS, x)


def longitudinal_project(x: np.ndarray) -> np.ndarray:
    out = np.zeros(4, dtype=complex)
    out[2], out[3] = x[2], x[3]
    return out


# --- gamma matrices -------------------------------------------------------
#
# Built from the standard Dirac representation gt^0..gt^3 (metric +,-,-,-)
# by gamma^0 = i gt^1, gamma^1 = i gt^2, gamma^2 = i gt^0, gamma^3 = i gt^3,
# which mechanically satisfies {gamma^m, gamma^n} = 2 g^mn with our metric.

_I2 = np.eye(2, dtype=complex)
_SIG = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]

_GT0 = np.block([[_I2, np.zeros((2, 2))], [np.zeros((2, 2)), -_I2]])
_GT = [np.block([[np.zeros((2, 2)), s], [-s, np.zeros((2, 2))]]) for s in _SIG]


def build_gamma() -> np.ndarray:
    """Return the (4, 4, 4) array gamma[mu] realizing the fixed metric."""
    return np.stack([1j * _GT[0], 1j * _GT[1], 1j * _GT0, 1j * _GT[2]])


GAMMA = build_gamma()

IDENTITY4 = np.eye(4, dtype=complex)


def slash(v: np.ndarray, gamma: np.ndarray = GAMMA) -> np.ndarray:
    """Contraction sum_m gamma^m g_mm v^m for a contravariant four-vector v."""
    return np.einsum("mij,m->ij", gamma, METRIC * np.asarray(v, dtype=complex))


SLASH_EPS = slash(EPS)
SLASH_EPS_CONJ = slash(EPS_CONJ)
SLASH_K = slash(WAVE_K)


def projector_plus() -> np.ndarray:
    """P_+ = slash(eps) slash(eps*) / 2; rank-2 idempotent."""
    return SLASH_EPS @ SLASH_EPS_CONJ / 2.0


def projector_minus() -> np.ndarray:
    """P_- = slash(eps*) slash(eps) / 2; complements P_+ to the identity."""
    return SLASH_EPS_CONJ @ SLASH_EPS / 2.0


P_PLUS = projector_plus()
P_MINUS = projector_minus()


#: Projectors onto the eps / eps* directions and the longitudinal plane
#: (acting on contravariant components, bilinear pairing).
P_EPS = np.outer(EPS, METRIC * EPS_CONJ)
P_EPS_CONJ = np.outer(EPS_CONJ, METRIC * EPS)
P_LONG = np.eye(4, dtype=complex) - P_EPS - P_EPS_CONJ


def transverse_spectral(c_eps: complex, c_eps_conj: complex, c_long: complex = 0.0) -> np.ndarray:
    """Matrix acting as c_eps on eps, c_eps_conj on eps*, c_long longitudinally."""
    return c_eps * P_EPS + c_eps_conj * P_EPS_CONJ + c_long * P_LONG


def tanh_projector_identity(alpha: complex) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the hyperbolic resummation of the transverse projectors.

    Left:  I - (1/2) tanh(alpha/2) (slash(eps) slash(eps*) - slash(eps*) slash(eps))
    Right: exp(-alpha/2) weights on P_+ plus exp(+alpha/2) weights on P_-,
           normalized by 2 cosh(alpha/2).

    Raises PoleError on the poles of tanh (cosh(alpha/2) ~ 0).
    """
    half = complex(alpha) / 2.0
    denom = np.cosh(half)
    if abs(denom) < 1e-12:
        raise PoleError(f"cosh(alpha/2) vanishes at alpha={alpha!r}")
    lhs = IDENTITY4 - 0.5 * np.tanh(half) * (SLASH_EPS @ SLASH_EPS_CONJ - SLASH_EPS_CONJ @ SLASH_EPS)
    rhs = (np.exp(-half) * (SLASH_EPS @ SLASH_EPS_CONJ) + np.exp(half) * (SLASH_EPS_CONJ @ SLASH_EPS)) / (2.0 * denom)
    return lhs, rhs
