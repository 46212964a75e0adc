"""Numerical tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-9
    psd: float = 1e-9
    trace: float = 1e-9
    norm: float = 1e-9
    freeness: float = 1e-9
    completeness: float = 1e-9
    # overlaps at or below this are treated as exactly zero by rugosity
    underflow: float = 1e-300
    # eigenvalues below this (relative to the largest) are rounding noise;
    # fractional powers would otherwise amplify them, e.g. (1e-16)**0.3 ~ 1e-5
    eig_floor: float = 1e-13
    # amplitudes below this magnitude get phase 0
    phase_zero: float = 1e-12
    # 1 - <f|target|f> below this means the target is the free state
    free_target: float = 1e-12


TOL = Tolerances()
