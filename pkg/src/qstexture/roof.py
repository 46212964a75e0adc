"""Texture measures built from a function of the overlap with |f>.

A function g on [0, 1] with g(1) = 0 that is non-increasing and concave
gives the pure-state measure g(|<f|psi>|^2), extended to mixed states by
the convex roof: the minimum of sum_i p_i g(|<f|psi_i>|^2) over all
pure-state ensembles of rho.

Every ensemble of rho = W W^dagger (W = V sqrt(Lambda), r = rank) has the
form psi~_i = sum_k U_ik W_k for an m x r isometry U, so the search runs
over unconstrained complex m x r matrices that are orthonormalized before
each evaluation.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels_py, kernels
from .errors import EnsembleTooSmall, InvalidFunction
from .linalg import hermitian_eig
from .states import generator, nontexture_state, validate_density, validate_pure

RANK_CUTOFF = 1e-12
STEP0 = 0.5
SHRINK = 0.9
GROW = 1.5


@dataclass(frozen=True)
class MonotoneConcaveFunction:
    name: str
    func: Callable[[float], float]
    kernel_id: Optional[int] = None
    params: tuple = ()

    def __call__(self, t):
        return self.func(t)

    def screen(self, grid: int = 1000, pairs: int = 500, tol: float = 1e-12) -> list:
        """List of violated conditions (empty when the function qualifies)."""
        problems = []
        ts = np.linspace(0.0, 1.0, grid)
        vals = np.array([self.func(t) for t in ts], dtype=float)
        if not abs(self.func(1.0)) <= tol:
            problems.append(f"f(1) = {self.func(1.0)!r}, expected 0")
        with np.errstate(invalid="ignore"):
            rises = np.diff(vals)
        if np.any(~(rises <= tol)):
            problems.append("not non-increasing on the grid")
        rng = np.random.default_rng(20240531)
        a, b = rng.random(pairs), rng.random(pairs)
        mid = np.array([self.func(t) for t in 0.5 * (a + b)], dtype=float)
        ends = 0.5 * (np.array([self.func(t) for t in a], dtype=float)
                      + np.array([self.func(t) for t in b], dtype=float))
        with np.errstate(invalid="ignore"):
            ok = mid >= ends - tol
        if not np.all(ok):
            problems.append("midpoint concavity fails")
        return problems


_LIBRARY = {
    "linear": (lambda t: 1.0 - t, kernels.LINEAR),
    "sqrt-complement": (lambda t: math.sqrt(max(1.0 - t, 0.0)), kernels.SQRT_COMPLEMENT),
    "quadratic": (lambda t: 1.0 - t * t, kernels.QUADRATIC),
    "one-minus-sqrt": (lambda t: 1.0 - math.sqrt(max(t, 0.0)), kernels.ONE_MINUS_SQRT),
    "neg-log": (lambda t: math.inf if t <= 0 else -math.log(t), kernels.NEG_LOG),
}


def library_function(name: str) -> MonotoneConcaveFunction:
    """Built-in overlap functions.

    ``linear`` (1 - t) is the geometric measure and has a closed-form roof.
    ``sqrt-complement`` and ``quadratic`` also qualify. ``one-minus-sqrt`` and
    ``neg-log`` are convex, so they are provided but fail :meth:`screen`.
    """
    try:
        func, kid = _LIBRARY[name]
    except KeyError:
        raise InvalidFunction(f"unknown function {name!r}; choose from {sorted(_LIBRARY)}") from None
    return MonotoneConcaveFunction(name, func, kid)


_screened = {}


def _require_valid(fn: MonotoneConcaveFunction):
    key = (fn.name, fn.params, fn.func)
    if key not in _screened:
        _screened[key] = fn.screen()
    if _screened[key]:
        raise InvalidFunction(f"{fn.name}: " + "; ".join(_screened[key]))


def pure_texture(psi, fn: MonotoneConcaveFunction) -> float:
    _require_valid(fn)
    psi = validate_pure(psi)
    f = nontexture_state(psi.size)
    return float(fn(min(abs(np.vdot(f, psi)) ** 2, 1.0)))


@dataclass(frozen=True)
class RoofConfig:
    ensemble_size: Optional[int] = None  # default 2 * rank
    restarts: int = 16
    max_iterations: int = 500
    tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.restarts < 1 or self.max_iterations < 0:
            raise ValueError("restarts must be >= 1 and max_iterations >= 0")


@dataclass
class RoofResult:
    value: float
    weights: np.ndarray
    states: list
    isometry: np.ndarray
    restart_values: list = field(default_factory=list)

    def density(self) -> np.ndarray:
        return sum(p * np.outer(s, s.conj()) for p, s in zip(self.weights, self.states))


def _orthonormalize(x: np.ndarray) -> np.ndarray:
    u = np.array(x, dtype=np.complex128)
    for j in range(u.shape[1]):
        for i in range(j):
            u[:, j] -= np.vdot(u[:, i], u[:, j]) * u[:, i]
        u[:, j] /= np.linalg.norm(u[:, j])
    return u


def convex_roof(rho, fn: MonotoneConcaveFunction, cfg: RoofConfig = RoofConfig(),
                initial: Optional[np.ndarray] = None) -> RoofResult:
    """Numerical convex roof of ``fn`` at ``rho``.

    Runs ``cfg.restarts`` independent accept-if-better searches (restart 0
    starts from the eigen-ensemble, the rest from Haar-random isometries)
    and keeps the lowest value. ``initial`` adds one more start, an m x r
    matrix such as a previous result's isometry padded with zero rows.
    """
    _require_valid(fn)
    rho = validate_density(rho)
    d = rho.shape[0]
    w, v = hermitian_eig(rho)
    keep = w > RANK_CUTOFF
    lam, vecs = w[keep], v[:, keep]
    r = int(lam.size)
    m = 2 * r if cfg.ensemble_size is None else cfg.ensemble_size
    if m < r:
        raise EnsembleTooSmall(f"ensemble size {m} is below rank {r}")
    wmat = vecs * np.sqrt(lam)
    c = nontexture_state(d).conj() @ wmat

    if fn.kernel_id is not None:
        search, fn_arg = kernels.roof_search, fn.kernel_id
    else:
        search, fn_arg = _kernels_py.roof_search, fn.func

    starts = []
    if initial is not None:
        x0 = np.asarray(initial, dtype=np.complex128)
        if x0.shape != (m, r):
            raise ValueError(f"initial must have shape {(m, r)}, got {x0.shape}")
        starts.append(x0)
    best_val, best_x, restart_values = math.inf, None, []
    for s in range(cfg.restarts):
        rng = generator(cfg.seed, s)
        if s == 0:
            x0 = np.zeros((m, r), dtype=np.complex128)
            x0[:r, :r] = np.eye(r)
        else:
            x0 = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
        idx = rng.integers(0, 2 * m * r, size=cfg.max_iterations)
        noise = rng.standard_normal(cfg.max_iterations)
        starts.append((x0, idx, noise))
    for start in starts:
        if isinstance(start, tuple):
            x0, idx, noise = start
        else:
            x0 = start
            rng = generator(cfg.seed, cfg.restarts)
            idx = rng.integers(0, 2 * m * r, size=cfg.max_iterations)
            noise = rng.standard_normal(cfg.max_iterations)
        val, x, _ = search(lam, c, fn_arg, x0, idx, noise, STEP0, SHRINK, GROW, cfg.tolerance)
        restart_values.append(float(val))
        if val < best_val:
            best_val, best_x = val, x

    u = _orthonormalize(best_x)
    members = wmat @ u.T  # column i is the unnormalized psi_i
    p = np.sum(np.abs(members) ** 2, axis=0)
    nz = p > 1e-300
    weights = p[nz]
    states = [members[:, i] / math.sqrt(p[i]) for i in np.flatnonzero(nz)]
    result = RoofResult(float(best_val), weights, states, u, restart_values)
    err = float(np.max(np.abs(result.density() - rho)))
    if err > 1e-8:
        raise RuntimeError(f"ensemble recomposition error {err:.2e}")
    return result
