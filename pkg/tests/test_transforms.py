import math

import numpy as np
import pytest

from qstexture import measures as M
from qstexture.channels import is_free_kraus_set
from qstexture.errors import DimUnsupported, TargetIsFreeState
from qstexture.states import (free_density, generator, nontexture_state, pure_density,
                              random_pure, random_state, to_f_frame)
from qstexture.transforms import (brute_force_max_prob, max_prob_pure_to_mixed,
                                  max_prob_pure_to_pure, random_free_contraction)

from conftest import FPERP, KET0

F2 = nontexture_state(2)


def _target(c_f, c_perp):
    return c_f * F2 + c_perp * FPERP


def test_unit_probability_from_fperp():
    for i in range(20):
        phi = random_pure(2, generator(1, i))
        res = max_prob_pure_to_pure(FPERP, phi)
        assert res.probability == 1.0 and res.achieved


def test_zero_to_fperp():
    res = max_prob_pure_to_pure(KET0, FPERP)
    assert abs(res.probability - 0.5) < 1e-12
    k0 = to_f_frame(res.instrument.operators[0])
    assert np.allclose(k0, np.diag([0, 1]), atol=1e-12)
    assert abs(brute_force_max_prob(KET0, FPERP) - 0.5) < 1e-4


def test_two_thirds_example():
    phi = _target(0.5, math.sqrt(3) / 2)
    res = max_prob_pure_to_pure(KET0, phi)
    assert abs(res.probability - 2 / 3) < 1e-12
    assert abs(brute_force_max_prob(KET0, phi) - 2 / 3) < 1e-4


def test_brute_force_examples():
    assert abs(brute_force_max_prob(FPERP, KET0) - 1) < 1e-4
    psi = random_pure(2, generator(9))
    assert abs(brute_force_max_prob(psi, psi) - 1) < 1e-4


def test_free_target_and_dim():
    with pytest.raises(TargetIsFreeState):
        max_prob_pure_to_pure(KET0, F2)
    with pytest.raises(TargetIsFreeState):
        max_prob_pure_to_mixed(KET0, free_density(2))
    with pytest.raises(DimUnsupported):
        max_prob_pure_to_pure(np.ones(3) / math.sqrt(3), np.array([1, 0, 0]))
    with pytest.raises(DimUnsupported):
        max_prob_pure_to_mixed(np.array([1, 0, 0]), np.eye(3) / 3)


def test_random_pairs_properties():
    for i in range(100):
        rng = generator(5, i)
        psi, phi = random_pure(2, rng), random_pure(2, rng)
        res = max_prob_pure_to_pure(psi, phi)
        assert 0 <= res.probability <= 1
        want = min(M.geometric_texture(pure_density(psi))
                   / M.geometric_texture(pure_density(phi)), 1)
        assert abs(res.probability - want) < 1e-10
        rep = is_free_kraus_set(res.instrument)
        assert rep.free and rep.complete
        out = res.branch_output(psi)
        assert np.max(np.abs(out / res.probability - pure_density(phi))) < 1e-8


def test_mixed_examples():
    res = max_prob_pure_to_mixed(KET0, np.eye(2) / 2)
    assert abs(res.probability - 1) < 1e-12
    assert abs(res.residual_q + 0.5) < 1e-12
    assert not res.achieved
    for i in range(10):
        sigma = random_state(2, generator(3, i))
        assert max_prob_pure_to_mixed(FPERP, sigma).probability == 1.0


def test_mixed_pure_target_reduces():
    for i in range(50):
        rng = generator(6, i)
        psi, phi = random_pure(2, rng), random_pure(2, rng)
        res = max_prob_pure_to_mixed(psi, pure_density(phi))
        assert abs(res.residual_q) < 1e-10 and res.achieved
        assert abs(res.probability - max_prob_pure_to_pure(psi, phi).probability) < 1e-12


def test_mixed_identity():
    for i in range(100):
        rng = generator(8, i)
        psi, sigma = random_pure(2, rng), random_state(2, rng)
        res = max_prob_pure_to_mixed(psi, sigma)
        assert res.identity_residual < 1e-10
        rep = is_free_kraus_set(res.instrument)
        assert rep.free and rep.complete


def test_upper_bound_soundness():
    for i in range(300):
        rng = generator(12, i)
        psi = random_pure(2, rng)
        k = random_free_contraction(rng)
        out = k @ psi
        p = float(np.vdot(out, out).real)
        phi = out / math.sqrt(p)
        try:
            best = max_prob_pure_to_pure(psi, phi).probability
        except TargetIsFreeState:
            continue
        assert p <= best + 1e-9
