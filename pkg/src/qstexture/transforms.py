"""Optimal stochastic conversions of qubit pure states under free operations.

Everything is worked out in the f-basis {|f>, |f_perp>}, where free Kraus
operators are exactly the upper-triangular ones. Writing
psi = alpha|f> + beta|f_perp> and phi = mu|f> + nu|f_perp>, the optimal
success probability is min(|beta|^2 / |nu|^2, 1).
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .channels import KrausSet, free_completion, gram
from .config import TOL
from .errors import DimUnsupported, TargetIsFreeState
from .states import (f_basis_matrix, free_density, generator, pure_density,
                     to_f_frame, validate_density, validate_pure)

IDENTITY_TOL = 1e-10


@dataclass
class ConversionResult:
    """Outcome of a conversion calculation.

    ``instrument`` is a complete free Kraus set; the operators listed in
    ``success`` form the branch that produces the target. ``residual_q`` is
    the coefficient of f left over in that branch's output
    (pure-to-mixed only). ``ratio`` is the uncapped texture ratio.
    """
    probability: float
    ratio: float
    instrument: Optional[KrausSet] = None
    success: Tuple[int, ...] = (0,)
    residual_q: Optional[float] = None
    achieved: bool = False
    # max entrywise error of the branch output against its claimed form
    identity_residual: float = 0.0

    def branch_output(self, psi) -> np.ndarray:
        rho = pure_density(psi)
        ops = self.instrument.operators
        return sum(ops[i] @ rho @ ops[i].conj().T for i in self.success)


def _phase(z: complex) -> float:
    return 0.0 if abs(z) < TOL.phase_zero else cmath.phase(z)


def _qubit_pure(psi) -> Tuple[np.ndarray, complex, complex]:
    psi = validate_pure(psi)
    if psi.size != 2:
        raise DimUnsupported(f"conversions are implemented for d=2 only, got d={psi.size}")
    c = f_basis_matrix(2).conj().T @ psi
    return psi, complex(c[0]), complex(c[1])


def _pure_instrument(alpha, beta, mu, nu):
    """f-basis Kraus operators converting (alpha, beta) to (mu, nu).

    Returns ``(ops, success, p)``. When |beta| < |nu| a single diagonal
    operator diag(a, 1) succeeds with p = |beta|^2/|nu|^2. Otherwise
    p = 1 and both returned operators map psi onto multiples of phi.
    """
    ratio = abs(beta) ** 2 / abs(nu) ** 2
    if ratio < 1.0:
        if abs(beta) == 0.0:
            mag = 0.0
        else:
            mag = abs(beta) * abs(mu) / (abs(alpha) * abs(nu))
        ph = (_phase(mu) - _phase(nu)) - (_phase(alpha) - _phase(beta))
        a = mag * cmath.exp(1j * ph)
        k0 = np.diag([a, 1.0]).astype(np.complex128)
        k1 = np.diag([math.sqrt(max(0.0, 1.0 - abs(a) ** 2)), 0.0]).astype(np.complex128)
        return [k0, k1], (0,), ratio
    if abs(mu) < TOL.phase_zero:
        # psi and phi both lie on the f_perp ray
        k0 = np.diag([1.0, cmath.exp(1j * (_phase(nu) - _phase(beta)))]).astype(np.complex128)
        return [k0], (0,), 1.0
    s = math.sqrt(max(0.0, 1.0 - abs(nu) ** 2 / abs(beta) ** 2))
    k0 = np.array([[1.0, 0.0], [0.0, alpha * nu / (mu * beta)]], dtype=np.complex128)
    k1 = np.array([[0.0, s], [0.0, s * nu / mu]], dtype=np.complex128)
    return [k0, k1], (0, 1), 1.0


def _to_computational(ops):
    b = f_basis_matrix(2)
    return [b @ k @ b.conj().T for k in ops]


def max_prob_pure_to_pure(psi, phi) -> ConversionResult:
    psi, alpha, beta = _qubit_pure(psi)
    phi, mu, nu = _qubit_pure(phi)
    if 1.0 - abs(mu) ** 2 <= TOL.free_target:
        raise TargetIsFreeState("target is the free state f; its texture is zero")
    ops, success, p = _pure_instrument(alpha, beta, mu, nu)
    ratio = abs(beta) ** 2 / abs(nu) ** 2
    ks = KrausSet.from_operators(_to_computational(ops))
    res = ConversionResult(min(ratio, 1.0), ratio, ks, success)
    out = res.branch_output(psi)
    res.identity_residual = float(np.max(np.abs(out - res.probability * pure_density(phi))))
    res.achieved = res.probability > 0 and res.identity_residual <= IDENTITY_TOL
    return res


def max_prob_pure_to_mixed(psi, sigma) -> ConversionResult:
    """Pure-to-mixed qubit conversion.

    The probability is min((1 - |<f|psi>|^2)/(1 - <f|sigma|f>), 1). The
    branch output always has the form p sigma + q f with q <= 0; it equals
    p sigma only when q = 0, i.e. when sigma is pure, so ``achieved`` is
    False for strictly mixed targets and ``probability`` is then an upper
    bound rather than an attained value.
    """
    psi, alpha, beta = _qubit_pure(psi)
    sigma = validate_density(sigma)
    if sigma.shape != (2, 2):
        raise DimUnsupported(f"conversions are implemented for d=2 only, got d={sigma.shape[0]}")
    sf = to_f_frame(sigma)
    s11 = float(sf[0, 0].real)
    s12 = complex(sf[0, 1])
    if 1.0 - s11 <= TOL.free_target:
        raise TargetIsFreeState("target is the free state f; its texture is zero")
    ratio = abs(beta) ** 2 / (1.0 - s11)
    det_gap = abs(s12) ** 2 - s11 * (1.0 - s11)
    if ratio < 1.0:
        p = ratio
        mag = abs(s12) * abs(beta) / ((1.0 - s11) * abs(alpha))
        a = mag * cmath.exp(1j * ((_phase(beta) - _phase(alpha)) + _phase(s12)))
        k0 = np.diag([a, 1.0]).astype(np.complex128)
        ops = [k0, np.diag([math.sqrt(max(0.0, 1.0 - abs(a) ** 2)), 0.0]).astype(np.complex128)]
        success = (0,)
        q = abs(beta) ** 2 * det_gap / (1.0 - s11) ** 2
    else:
        # Aim for the rank-1 matrix t t^dagger with t = (s12 / v, v),
        # v = sqrt(1 - s11): it matches sigma except in the f-f entry.
        p = 1.0
        v = math.sqrt(1.0 - s11)
        t = np.array([s12 / v, v])
        n = float(np.linalg.norm(t))
        mu, nu = t / n
        pure_ops, succ, p_max = _pure_instrument(alpha, beta, mu, nu)
        scale = n if p_max >= 1.0 else n / math.sqrt(p_max)
        sub = [scale * pure_ops[i] for i in succ]
        completed = free_completion(KrausSet.from_operators(_to_computational(sub)))
        ops = [to_f_frame(k) for k in completed.operators]
        success = tuple(range(len(succ)))
        q = det_gap / (1.0 - s11)
    ks = KrausSet.from_operators(_to_computational(ops))
    res = ConversionResult(p, ratio, ks, success, residual_q=float(q))
    out = res.branch_output(psi)
    res.identity_residual = float(np.max(np.abs(out - (p * sigma + q * free_density(2)))))
    res.achieved = p > 0 and abs(q) <= IDENTITY_TOL * p
    return res


def brute_force_max_prob(psi, target, resolution: int = 32, seed: int = 0,
                         rounds: int = 40) -> float:
    """Search over all free upper-triangular contractions for the best success probability.

    Independent of the closed form: for K = s K' with K' psi = target the
    probability is 1/sigma_max(K')^2, and the one free entry of K' is
    scanned on a ``resolution`` x ``resolution`` grid that is re-centred on
    the best point and halved ``rounds`` times. The grid offset is jittered
    by ``seed``.
    """
    _, alpha, beta = _qubit_pure(psi)
    _, mu, nu = _qubit_pure(target)
    jx, jy = generator(seed).random(2)
    return float(kernels.maxprob_grid(alpha, beta, mu, nu, int(resolution), int(rounds),
                                      float(jx), float(jy)))


def random_free_contraction(rng) -> np.ndarray:
    """Random upper-triangular (f-basis) qubit operator with ||K|| <= 1, computational basis."""
    k = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    k[1, 0] = 0.0
    k = k / np.linalg.norm(k, 2) * math.sqrt(rng.uniform())
    return _to_computational([k])[0]
