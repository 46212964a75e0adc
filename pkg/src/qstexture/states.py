"""States: the free state f, the f-adapted basis, validation, Bloch vectors, sampling.

Random streams
--------------
Every stochastic routine takes an integer ``seed``. Sub-tasks (restarts,
samples, channels) draw from ``generator(seed, key...)``, which feeds
``numpy.random.SeedSequence(seed, spawn_key=keys)``; the child stream depends
only on ``(seed, keys)``, never on scheduling order.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .config import TOL
from .errors import (InvalidDim, InvalidRank, NotHermitian, NotNormalized, NotPSD,
                     TraceNotOne)
from .linalg import as_matrix, hermitian_eig, hermiticity_defect


def generator(seed: int, *keys: int) -> np.random.Generator:
    """Seeded generator for the stream identified by ``keys`` under ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.default_rng(ss)


def _check_dim(d) -> int:
    if int(d) != d or d < 2:
        raise InvalidDim(f"dimension must be an integer >= 2, got {d}")
    return int(d)


def nontexture_state(d: int) -> np.ndarray:
    """Amplitudes of |f> = d^{-1/2} sum_i |i>."""
    d = _check_dim(d)
    return np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)


def free_density(d: int) -> np.ndarray:
    """The free state f = |f><f| (all entries 1/d)."""
    d = _check_dim(d)
    return np.full((d, d), 1.0 / d, dtype=np.complex128)


@lru_cache(maxsize=None)
def _f_basis_matrix(d: int) -> np.ndarray:
    vecs = [np.full(d, 1.0 / np.sqrt(d))]
    for k in range(d - 1):
        v = np.zeros(d)
        v[k] = 1.0
        for u in vecs:
            v = v - (u @ v) * u
        vecs.append(v / np.linalg.norm(v))
    b = np.column_stack(vecs).astype(np.complex128)
    b.setflags(write=False)
    return b


def f_basis_matrix(d: int) -> np.ndarray:
    """Unitary whose columns are |f>, then an orthonormal basis of the complement.

    The complement vectors come from Gram-Schmidt on |0>, |1>, ..., |d-2>, so
    for d=2 the second column is exactly (|0> - |1>)/sqrt(2).
    """
    return _f_basis_matrix(_check_dim(d)).copy()


def f_basis(d: int) -> list:
    b = f_basis_matrix(d)
    return [b[:, k].copy() for k in range(b.shape[1])]


def to_f_frame(m) -> np.ndarray:
    """Express an operator given in the computational basis in the f-basis."""
    m = as_matrix(m)
    b = _f_basis_matrix(_check_dim(m.shape[0]))
    return b.conj().T @ m @ b


def from_f_frame(m) -> np.ndarray:
    m = as_matrix(m)
    b = _f_basis_matrix(_check_dim(m.shape[0]))
    return b @ m @ b.conj().T


def validate_density(m, tol: float = TOL.psd) -> np.ndarray:
    """Check that ``m`` is a density matrix and return it as complex128.

    Raises NotHermitian, NotPSD or TraceNotOne naming the violated bound.
    """
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > TOL.hermitian:
        raise NotHermitian(
            f"hermiticity defect {defect:.3e} exceeds {TOL.hermitian:.1e}")
    w, _ = hermitian_eig(a)
    if w[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below -{tol:.1e}")
    tr = np.trace(a)
    if abs(tr - 1.0) > TOL.trace:
        raise TraceNotOne(
            f"trace {tr.real:.12g}{tr.imag:+.3g}j differs from 1 by more than {TOL.trace:.1e}")
    return a.copy()


def validate_pure(v, tol: float = TOL.norm) -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1 or a.size < 1:
        raise ValueError(f"expected an amplitude vector, got shape {a.shape}")
    n = np.linalg.norm(a)
    if abs(n - 1.0) > tol:
        raise NotNormalized(f"norm {n:.12g} differs from 1 by more than {tol:.1e}")
    return a.copy()


def pure_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def purity(rho) -> float:
    rho = as_matrix(rho)
    return float(np.real(np.vdot(rho, rho)))


# -- Bloch vectors ----------------------------------------------------------

def _pairs(d: int):
    return [(k, l) for k in range(d) for l in range(k + 1, d)]


@lru_cache(maxsize=None)
def _z_gram(d: int) -> np.ndarray:
    # tr(s_k s_k') for s_k = |k><k| - |d-1><d-1|
    return np.ones((d - 1, d - 1)) + np.eye(d - 1)


@dataclass
class BlochVector:
    """Coefficients of rho in the families sigma_x(k,l), sigma_y(k,l), sigma_z(k).

    ``2 rho - (2/d) I = sum x sx + sum y sy + sum z sz``; for d=2 this is the
    usual ``rho = (I + x sx + y sy + z sz)/2``. Pairs (k,l), k<l, are in
    lexicographic order; the z family is |k><k| - |d-1><d-1| for k ascending.
    """
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    @property
    def dim(self) -> int:
        return self.z.size + 1

    def to_dict(self) -> dict:
        return {"dim": self.dim, "x": self.x.tolist(), "y": self.y.tolist(),
                "z": self.z.tolist()}


def bloch_decompose(rho) -> BlochVector:
    rho = validate_density(rho)
    d = rho.shape[0]
    pairs = _pairs(d)
    # tr(sx rho) = 2 Re rho_kl ; tr(sy rho) = 2 Im rho_lk
    x = np.array([2.0 * rho[k, l].real for k, l in pairs])
    y = np.array([2.0 * rho[l, k].imag for k, l in pairs])
    m = 2.0 * np.real(np.diag(rho)) - 2.0 / d
    rhs = m[:-1] - m[-1]
    z = np.linalg.solve(_z_gram(d), rhs)
    return BlochVector(x, y, z)


def bloch_matrix(v: BlochVector, d: int) -> np.ndarray:
    """``I/d + (1/2) sum c sigma`` without any state-space check."""
    d = _check_dim(d)
    n = d * (d - 1) // 2
    x, y, z = (np.asarray(c, dtype=float) for c in (v.x, v.y, v.z))
    if x.size != n or y.size != n or z.size != d - 1:
        raise ValueError(
            f"coefficient lengths ({x.size}, {y.size}, {z.size}) do not match d={d}")
    m = np.zeros((d, d), dtype=np.complex128)
    for (k, l), xi, yi in zip(_pairs(d), x, y):
        m[k, l] += xi - 1j * yi
        m[l, k] += xi + 1j * yi
    for k, zk in enumerate(z):
        m[k, k] += zk
        m[d - 1, d - 1] -= zk
    return np.eye(d) / d + 0.5 * m


def bloch_compose(v: BlochVector, d: int) -> np.ndarray:
    """Inverse of :func:`bloch_decompose`; NotPSD outside the state space."""
    return validate_density(bloch_matrix(v, d))


# -- sampling ---------------------------------------------------------------

def random_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unit vector."""
    g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return g / np.linalg.norm(g)


def random_mixed(d: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized G G^dagger with G a d x rank complex Gaussian matrix."""
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def sample_state(d: int, kind: str, rank: Optional[int] = None, seed: int = 0) -> np.ndarray:
    """Seeded random density matrix.

    ``kind="pure"`` gives a Haar pure state; ``kind="mixed"`` gives a
    Ginibre-type state of the requested rank (default ``d``).
    """
    if int(d) != d or d < 1:
        raise InvalidDim(f"dimension must be a positive integer, got {d}")
    d = int(d)
    rng = generator(seed)
    if kind == "pure":
        if rank not in (None, 1):
            raise InvalidRank(f"pure states have rank 1, got rank={rank}")
        return pure_density(random_pure(d, rng))
    if kind == "mixed":
        rank = d if rank is None else rank
        if int(rank) != rank or not 1 <= rank <= d:
            raise InvalidRank(f"rank must satisfy 1 <= rank <= {d}, got {rank}")
        return random_mixed(d, int(rank), rng)
    raise ValueError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Pure with probability 1/4, otherwise mixed of uniformly random rank."""
    if rng.random() < 0.25:
        return pure_density(random_pure(d, rng))
    return random_mixed(d, int(rng.integers(1, d + 1)), rng)


def child_seed(seed: int, *keys: int) -> int:
    """Integer seed for a sub-task, derived by hashing (seed, keys)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
