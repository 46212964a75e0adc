"""Closed-form texture measures and the companion coherence-type quantities.

All functions take a density matrix as a complex ndarray in the
computational basis. The scalar functions return floats; :func:`evaluate`
wraps them behind the string identifiers used by the command line.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import TOL
from .errors import InvalidAlpha, UnknownMeasure
from .linalg import as_matrix, psd_power, sqrt_psd, trace_norm
from .states import bloch_decompose, free_density, nontexture_state


def overlap_f(rho) -> float:
    """<f|rho|f> = (1/d) sum_ij rho_ij."""
    rho = as_matrix(rho)
    return float(np.real(rho.sum()) / rho.shape[0])


def rugosity(rho) -> float:
    """-ln <f|rho|f>; ``inf`` once the overlap underflows."""
    F = overlap_f(rho)
    if F <= TOL.underflow:
        return math.inf
    return -math.log(F)


def _check_open_unit(alpha):
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie in (0, 1), got {alpha}")


def alpha_affinity(rho, sigma, alpha: float) -> float:
    """tr(rho^alpha sigma^(1-alpha)) for alpha in (0, 1)."""
    _check_open_unit(alpha)
    return float(np.real(np.trace(psd_power(rho, alpha) @ psd_power(sigma, 1.0 - alpha))))


def texture_alpha_affinity(rho, alpha: float) -> float:
    """1 - A_alpha(rho, f)."""
    rho = as_matrix(rho)
    return 1.0 - alpha_affinity(rho, free_density(rho.shape[0]), alpha)


def hellinger_texture(rho) -> float:
    """Hellinger distance to f, computed as twice the alpha=1/2 affinity texture."""
    return 2.0 * texture_alpha_affinity(rho, 0.5)


def hellinger_distance(rho, sigma) -> float:
    """tr(sqrt(rho) - sqrt(sigma))^2 evaluated directly."""
    diff = sqrt_psd(rho) - sqrt_psd(sigma)
    return float(np.real(np.trace(diff @ diff)))


def tsallis_texture(rho, alpha: float) -> float:
    """Tsallis relative alpha entropy D_alpha(rho || f).

    For alpha in (0, 1) this is ``(1 - <f|rho^alpha|f>)/(1 - alpha)``. For
    alpha > 1 the support of rho must lie in the span of |f>, so the value
    is 0 at rho = f and ``inf`` everywhere else.
    """
    if not alpha > 0 or alpha == 1:
        raise InvalidAlpha(f"alpha must be positive and != 1, got {alpha}")
    rho = as_matrix(rho)
    if alpha > 1:
        return 0.0 if 1.0 - overlap_f(rho) <= TOL.psd else math.inf
    f = nontexture_state(rho.shape[0])
    val = np.real(np.vdot(f, psd_power(rho, alpha) @ f))
    return float((1.0 - val) / (1.0 - alpha))


def geometric_texture(rho) -> float:
    """1 - <f|rho|f>."""
    return 1.0 - overlap_f(rho)


def l1_texture(rho) -> float:
    """Trace distance (1/2) ||rho - f||_1 to the free state."""
    rho = as_matrix(rho)
    return 0.5 * trace_norm(rho - free_density(rho.shape[0]))


def coherence_l1(rho) -> float:
    """sum_{i != j} |rho_ij|."""
    rho = as_matrix(rho)
    return float(np.abs(rho).sum() - np.abs(np.diag(rho)).sum())


@dataclass(frozen=True)
class L1Components:
    texture: float
    coherence: float
    imaginarity: float
    predictability: float


def l1_components(rho) -> L1Components:
    """Bloch-coordinate l1 texture, coherence, imaginarity and predictability.

    Coefficients are taken relative to ``rho = (1/d)(I + sum x sx + ...)``,
    under which f sits at x = (1, ..., 1), y = z = 0. For d=2 these are the
    ordinary Bloch coordinates and the texture is ``(|x-1| + |y| + |z|)/2``.
    """
    rho = as_matrix(rho)
    d = rho.shape[0]
    v = bloch_decompose(rho)
    s = d / 2.0
    x, y, z = s * v.x, s * v.y, s * v.z
    ax, ay, az = np.abs(x - 1).sum(), np.abs(y).sum(), np.abs(z).sum()
    return L1Components(
        texture=float((ax + ay + az) / d),
        coherence=float((np.abs(x).sum() + ay) / d),
        imaginarity=float(ay / d),
        predictability=float(az / d),
    )


@dataclass(frozen=True)
class L2Components:
    texture: float
    c_l2: float
    p_l2: float
    gamma: float
    overlap_f: float
    # sum_i |rho_ii - 1/d|^2, the diagonal half of the texture split
    diag_deviation: float


def l2_components(rho) -> L2Components:
    rho = as_matrix(rho)
    d = rho.shape[0]
    dev = np.abs(rho - 1.0 / d) ** 2
    diag_dev = float(np.trace(dev).real)
    absq = np.abs(rho) ** 2
    p = float(np.trace(absq).real)
    return L2Components(
        texture=float(dev.sum()),
        c_l2=float(absq.sum() - p),
        p_l2=p,
        gamma=float(dev.sum() - diag_dev),
        overlap_f=overlap_f(rho),
        diag_deviation=diag_dev,
    )


def l2_texture(rho) -> float:
    """sum_ij |rho_ij - 1/d|^2."""
    rho = as_matrix(rho)
    return float((np.abs(rho - 1.0 / rho.shape[0]) ** 2).sum())


def skew_information(rho, k) -> float:
    """Wigner-Yanase skew information -1/2 tr([sqrt(rho), |k><k|]^2)."""
    k = np.asarray(k, dtype=np.complex128)
    proj = np.outer(k, k.conj())
    s = sqrt_psd(rho)
    c = s @ proj - proj @ s
    return float(-0.5 * np.real(np.trace(c @ c)))


def affinity_with_f(rho) -> float:
    """A(rho, f) = <f|sqrt(rho)|f>."""
    rho = as_matrix(rho)
    f = nontexture_state(rho.shape[0])
    return float(np.real(np.vdot(f, sqrt_psd(rho) @ f)))


# -- identifiers ------------------------------------------------------------

@dataclass(frozen=True)
class MeasureValue:
    measure_id: str
    value: float
    alpha: Optional[float] = None

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)

    def to_dict(self) -> dict:
        return {"measure": self.measure_id, "alpha": self.alpha,
                "value": self.value if self.finite else "inf"}


def _needs_alpha(fn):
    def wrapped(rho, alpha):
        if alpha is None:
            raise InvalidAlpha("this measure requires alpha")
        return fn(rho, alpha)
    return wrapped


def _roof_g(rho, alpha=None):
    from .roof import RoofConfig, convex_roof, library_function

    rank = max(1, int(np.sum(np.linalg.eigvalsh(as_matrix(rho)) > 1e-12)))
    cfg = RoofConfig(ensemble_size=2 * rank, restarts=1, max_iterations=20)
    return convex_roof(rho, library_function("linear"), cfg).value


MEASURES = {
    "rugosity": lambda rho, alpha=None: rugosity(rho),
    "affinity-alpha": _needs_alpha(texture_alpha_affinity),
    "hellinger": lambda rho, alpha=None: hellinger_texture(rho),
    "tsallis-alpha": _needs_alpha(tsallis_texture),
    "geometric": lambda rho, alpha=None: geometric_texture(rho),
    "l1": lambda rho, alpha=None: l1_texture(rho),
    "l2": lambda rho, alpha=None: l2_texture(rho),
    "roof-g": _roof_g,
}


def measure_function(measure_id: str):
    try:
        return MEASURES[measure_id]
    except KeyError:
        raise UnknownMeasure(
            f"unknown measure {measure_id!r}; expected one of {sorted(MEASURES)}") from None


def evaluate(measure_id: str, rho, alpha: Optional[float] = None) -> MeasureValue:
    fn = measure_function(measure_id)
    used_alpha = alpha if measure_id in ("affinity-alpha", "tsallis-alpha") else None
    return MeasureValue(measure_id, fn(rho, alpha), used_alpha)
