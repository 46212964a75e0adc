"""Quantum-state texture: measures relative to the uniform state f, free
operations that fix f, conversion probabilities, and resource relations."""

from .config import TOL, Tolerances
from .errors import *  # noqa: F401,F403
from .states import (BlochVector, bloch_compose, bloch_decompose, f_basis, free_density,
                     nontexture_state, pure_density, random_mixed, random_pure, sample_state,
                     validate_density, validate_pure)
from .measures import (MEASURES, MeasureValue, alpha_affinity, coherence_l1, evaluate,
                       geometric_texture, hellinger_distance, hellinger_texture, l1_components,
                       l1_texture, l2_components, l2_texture, rugosity, skew_information,
                       texture_alpha_affinity, tsallis_texture)
from .roof import MonotoneConcaveFunction, RoofConfig, RoofResult, convex_roof, library_function
from .channels import (KrausSet, apply_channel, free_completion, free_unitary,
                       is_free_kraus_set, sample_free_channel)
from .transforms import (ConversionResult, brute_force_max_prob, max_prob_pure_to_mixed,
                         max_prob_pure_to_pure)
from .relations import (VerificationReport, axiom_suite, l1_report, l2_report, skew_report,
                        transforms_report)
from .kernels import BACKEND

__version__ = "0.1.0"
