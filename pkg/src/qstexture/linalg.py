"""Dense Hermitian primitives: eigendecomposition, PSD powers, norms."""

from typing import NamedTuple

import numpy as np

from .config import TOL
from .errors import InvalidAlpha, NotHermitian, NotPSD


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """max |m_ij - conj(m_ji)|."""
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_eig(m, tol: float = TOL.hermitian) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    NotHermitian
        If ``max |m_ij - conj(m_ji)|`` exceeds ``tol``.
    """
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds {tol:.1e}")
    # symmetrize so LAPACK sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return EigenDecomposition(w, v)


def psd_power(m, alpha: float, tol: float = TOL.psd) -> np.ndarray:
    """``V diag(lambda**alpha) V^dagger`` for a Hermitian PSD matrix.

    Eigenvalues in ``[-tol, 0)`` are clipped to zero, and ``0**alpha = 0``.
    Eigenvalues below ``TOL.eig_floor`` times the largest one count as zero.
    """
    if not alpha > 0:
        raise InvalidAlpha(f"power must be positive, got {alpha}")
    w, v = hermitian_eig(m)
    if w[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below -{tol:.1e}")
    w = np.clip(w, 0.0, None)
    w[w <= TOL.eig_floor * max(w[-1], 1.0)] = 0.0
    wa = np.where(w > 0, w ** alpha, 0.0)
    return (v * wa) @ v.conj().T


def sqrt_psd(m) -> np.ndarray:
    return psd_power(m, 0.5)


def trace_norm(m) -> float:
    """Sum of singular values of a Hermitian matrix."""
    w, _ = hermitian_eig(m)
    return float(np.sum(np.abs(w)))


def max_abs(m) -> float:
    return float(np.max(np.abs(m)))
