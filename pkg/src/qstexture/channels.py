"""Free operations: Kraus sets whose every operator maps |f> onto a multiple of |f>."""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .config import TOL
from .errors import FreeCompletionUndefined, InvalidRecipe, NotFree
from .linalg import as_matrix, hermitian_eig, psd_power
from .states import (_check_dim, f_basis_matrix, free_density, from_f_frame, generator,
                     nontexture_state, to_f_frame)

RECIPES = ("unitary_mixture", "partial_replacement", "triangular_instrument", "f_damping")


@dataclass
class KrausSet:
    """Kraus operators in the computational basis.

    ``completeness`` is ``"complete"`` when sum K^dagger K = I and ``"sub"``
    otherwise; ``proportionality`` holds a_n with K_n|f> ~ a_n|f>.
    """
    dim: int
    operators: List[np.ndarray]
    completeness: str = "complete"
    proportionality: List[complex] = field(default_factory=list)

    @classmethod
    def from_operators(cls, ops) -> "KrausSet":
        ops = [as_matrix(k) for k in ops]
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        d = ops[0].shape[0]
        if any(k.shape != (d, d) for k in ops):
            raise ValueError("all Kraus operators must share one square shape")
        f = nontexture_state(d)
        props = [complex(np.vdot(f, k @ f)) for k in ops]
        err = np.max(np.abs(gram(ops) - np.eye(d)))
        return cls(d, ops, "complete" if err <= TOL.completeness else "sub", props)

    def in_f_frame(self) -> List[np.ndarray]:
        b = f_basis_matrix(self.dim)
        return [b.conj().T @ k @ b for k in self.operators]

    def to_dict(self) -> dict:
        from .fileio import matrix_to_json
        return {"dim": self.dim, "kraus": [matrix_to_json(k) for k in self.operators]}


def gram(ops) -> np.ndarray:
    """sum_n K_n^dagger K_n."""
    return sum(k.conj().T @ k for k in ops)


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    freeness_defect: float
    worst_operator: int
    completeness_defect: float
    complete: bool
    message: str

    def __bool__(self):
        return self.free


def is_free_kraus_set(ks: KrausSet) -> FreenessReport:
    """Check K_n|f> ~ |f> for each n and sum K^dagger K <= I (or = I if complete)."""
    f = nontexture_state(ks.dim)
    defects = []
    for k in ks.operators:
        kf = k @ f
        defects.append(float(np.linalg.norm(kf - np.vdot(f, kf) * f)))
    worst = int(np.argmax(defects))
    s = gram(ks.operators)
    eq_defect = float(np.max(np.abs(s - np.eye(ks.dim))))
    if ks.completeness == "complete":
        comp_defect = eq_defect
    else:
        comp_defect = max(0.0, -float(hermitian_eig(np.eye(ks.dim) - s).eigenvalues[0]))
    problems = []
    if defects[worst] > TOL.freeness:
        problems.append(f"operator {worst} moves |f> off its ray by {defects[worst]:.3e}")
    if comp_defect > TOL.completeness:
        what = "sum K^dagger K != I" if ks.completeness == "complete" else "I - sum K^dagger K not PSD"
        problems.append(f"{what} (defect {comp_defect:.3e})")
    return FreenessReport(not problems, defects[worst], worst, comp_defect,
                          eq_defect <= TOL.completeness, "; ".join(problems) or "free")


def apply_channel(ks: KrausSet, rho):
    """sum_n K_n rho K_n^dagger.

    Complete sets return the output state; sub-normalized sets return
    ``(unnormalized_output, probability)``.
    """
    rep = is_free_kraus_set(ks)
    if not rep.free:
        raise NotFree(rep.message)
    rho = as_matrix(rho)
    out = sum(k @ rho @ k.conj().T for k in ks.operators)
    out = 0.5 * (out + out.conj().T)
    if ks.completeness == "complete":
        return out
    return out, float(np.trace(out).real)


def free_completion(ks: KrausSet) -> KrausSet:
    """Append sqrt(I - S), S = sum K^dagger K, when that operator is itself free.

    That holds exactly when |f> is an eigenvector of S.
    """
    s = gram(ks.operators)
    f = nontexture_state(ks.dim)
    sf = s @ f
    defect = float(np.linalg.norm(sf - np.vdot(f, sf) * f))
    if defect > TOL.freeness:
        raise FreeCompletionUndefined(
            f"|f> is not an eigenvector of sum K^dagger K (defect {defect:.3e})")
    # The f/complement cross terms are within tolerance of zero; dropping
    # them keeps the square root exactly block diagonal in the f frame.
    r = np.eye(ks.dim) - to_f_frame(s)
    r[0, 1:] = 0.0
    r[1:, 0] = 0.0
    rest = from_f_frame(psd_power(r, 0.5))
    return KrausSet.from_operators(list(ks.operators) + [rest])


def replacement_channel(d: int) -> KrausSet:
    """K_i = |f><i|: every state goes to f."""
    d = _check_dim(d)
    f = nontexture_state(d)
    ops = []
    for i in range(d):
        k = np.zeros((d, d), dtype=np.complex128)
        k[:, i] = f
        ops.append(k)
    return KrausSet.from_operators(ops)


def _haar_unitary(n: int, rng) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def free_unitary(d: int, rng) -> np.ndarray:
    """1 (on |f>) direct sum a Haar unitary on the complement, computational basis."""
    b = f_basis_matrix(d)
    v = np.eye(d, dtype=np.complex128)
    v[1:, 1:] = _haar_unitary(d - 1, rng)
    return b @ v @ b.conj().T


def _from_frame(d, ops):
    b = f_basis_matrix(d)
    return [b @ k @ b.conj().T for k in ops]


def sample_free_channel(d: int, recipe: str, seed: int) -> KrausSet:
    """Seeded random free channel.

    Recipes
    -------
    unitary_mixture
        {sqrt(p_n) V_n} with V_n = 1 (+) Haar unitary on the f-complement.
    partial_replacement
        sqrt(1-eps) times a unitary mixture together with sqrt(eps) times the
        replacement channel.
    triangular_instrument
        d=2 only: K0 = diag(a, 1), K1 = sqrt(I - K0^dagger K0) in the f-basis.
    f_damping
        Non-unital: K0 = |f><f| + sqrt(1-g) P_perp, K_j = sqrt(g) |f><e_j|
        for an orthonormal basis e_j of the complement.
    """
    d = _check_dim(d)
    if recipe not in RECIPES:
        raise InvalidRecipe(f"unknown recipe {recipe!r}; choose from {RECIPES}")
    rng = generator(seed, RECIPES.index(recipe))
    if recipe in ("unitary_mixture", "partial_replacement"):
        n = int(rng.integers(1, 4))
        p = rng.dirichlet(np.ones(n))
        ops = [np.sqrt(pi) * free_unitary(d, rng) for pi in p]
        if recipe == "partial_replacement":
            eps = float(rng.uniform(0.0, 1.0))
            ops = [np.sqrt(1 - eps) * k for k in ops]
            ops += [np.sqrt(eps) * k for k in replacement_channel(d).operators]
        return KrausSet.from_operators(ops)
    if recipe == "triangular_instrument":
        if d != 2:
            raise InvalidRecipe("triangular_instrument is defined for d=2 only")
        a = np.sqrt(rng.uniform(0.0, 1.0)) * np.exp(2j * np.pi * rng.uniform())
        k0 = np.diag([a, 1.0]).astype(np.complex128)
        sub = KrausSet.from_operators(_from_frame(d, [k0]))
        return free_completion(sub)
    g = float(rng.uniform(0.0, 1.0))
    u = _haar_unitary(d - 1, rng)
    k0 = np.zeros((d, d), dtype=np.complex128)
    k0[0, 0] = 1.0
    k0[1:, 1:] = np.sqrt(1 - g) * np.eye(d - 1)
    ops = [k0]
    for j in range(d - 1):
        kj = np.zeros((d, d), dtype=np.complex128)
        kj[0, 1:] = np.sqrt(g) * u[:, j].conj()
        ops.append(kj)
    return KrausSet.from_operators(_from_frame(d, ops))


def fixed_point_defect(ks: KrausSet) -> float:
    """max |Lambda(f) - f| for a complete set."""
    f = free_density(ks.dim)
    out = sum(k @ f @ k.conj().T for k in ks.operators)
    return float(np.max(np.abs(out - f)))
