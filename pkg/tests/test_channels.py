import numpy as np
import pytest

from qstexture import measures as M
from qstexture.channels import (RECIPES, KrausSet, apply_channel, fixed_point_defect,
                                free_completion, free_unitary, is_free_kraus_set,
                                replacement_channel, sample_free_channel)
from qstexture.errors import FreeCompletionUndefined, InvalidRecipe, NotFree
from qstexture.states import free_density, from_f_frame, generator, random_state

from conftest import states


def test_identity_is_free():
    rep = is_free_kraus_set(KrausSet.from_operators([np.eye(2)]))
    assert rep.free and rep.complete
    assert np.allclose(KrausSet.from_operators([np.eye(2)]).proportionality, [1])


def test_f_basis_diagonal_pair():
    ops = [from_f_frame(np.diag([0.0, 1.0])), from_f_frame(np.diag([1.0, 0.0]))]
    rep = is_free_kraus_set(KrausSet.from_operators(ops))
    assert rep.free and rep.complete


def test_sigma_z_not_free():
    rep = is_free_kraus_set(KrausSet.from_operators([np.diag([1.0, -1.0])]))
    assert not rep.free
    assert rep.worst_operator == 0 and "operator 0" in rep.message
    with pytest.raises(NotFree):
        apply_channel(KrausSet.from_operators([np.diag([1.0, -1.0])]), np.eye(2) / 2)


def test_replacement_channel():
    ks = replacement_channel(2)
    assert len(ks.operators) == 2
    assert all(np.linalg.matrix_rank(k) == 1 for k in ks.operators)
    assert is_free_kraus_set(ks).completeness_defect <= 1e-12
    assert np.allclose(apply_channel(ks, np.eye(2) / 2), free_density(2))
    rho = random_state(3, generator(1))
    assert np.allclose(apply_channel(replacement_channel(3), rho), free_density(3))


def test_identity_channel():
    rho = random_state(3, generator(2))
    assert np.allclose(apply_channel(KrausSet.from_operators([np.eye(3)]), rho), rho)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("recipe", RECIPES)
def test_recipes(d, recipe):
    if recipe == "triangular_instrument" and d != 2:
        with pytest.raises(InvalidRecipe):
            sample_free_channel(d, recipe, 0)
        return
    for seed in range(10):
        ks = sample_free_channel(d, recipe, seed)
        rep = is_free_kraus_set(ks)
        assert rep.free and rep.complete, rep.message
        assert fixed_point_defect(ks) <= 1e-9
        rho = random_state(d, generator(seed, 77))
        assert abs(np.trace(apply_channel(ks, rho)) - 1) < 1e-9


def test_recipe_examples():
    assert is_free_kraus_set(sample_free_channel(2, "unitary_mixture", 3)).free
    ks = sample_free_channel(3, "partial_replacement", 9)
    assert np.max(np.abs(apply_channel(ks, free_density(3)) - free_density(3))) < 1e-9
    a = sample_free_channel(2, "triangular_instrument", 1)
    assert is_free_kraus_set(a).complete
    with pytest.raises(InvalidRecipe):
        sample_free_channel(2, "bogus", 0)


def test_deterministic_per_seed():
    a = sample_free_channel(3, "unitary_mixture", 5).operators
    b = sample_free_channel(3, "unitary_mixture", 5).operators
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_free_completion():
    sub = KrausSet.from_operators([from_f_frame(np.diag([0.6, 1.0]))])
    assert sub.completeness == "sub"
    out, p = apply_channel(sub, np.eye(2) / 2)
    assert abs(p - np.trace(out).real) < 1e-15
    full = free_completion(sub)
    assert is_free_kraus_set(full).complete and is_free_kraus_set(full).free
    mixer = from_f_frame(np.array([[0.5, 0.5], [0, 0.5]]))
    with pytest.raises(FreeCompletionUndefined):
        free_completion(KrausSet.from_operators([mixer]))


def test_free_unitary_block_structure():
    u = free_unitary(3, generator(0))
    assert np.allclose(u.conj().T @ u, np.eye(3))
    f = np.full(3, 1 / np.sqrt(3))
    assert np.allclose(u @ f, f)


def test_affinity_data_processing():
    for d in (2, 3):
        recipes = [r for r in RECIPES if d == 2 or r != "triangular_instrument"]
        for i in range(500):
            rho, sigma = states(d, 2, seed=1000 * d + i)
            ks = sample_free_channel(d, recipes[i % len(recipes)], i)
            for a in (0.3, 0.7):
                before = M.alpha_affinity(rho, sigma, a)
                after = M.alpha_affinity(apply_channel(ks, rho), apply_channel(ks, sigma), a)
                assert after >= before - 1e-9
