import math

import numpy as np
import pytest

from qstexture import measures as M
from qstexture.errors import EnsembleTooSmall, InvalidFunction
from qstexture.roof import (MonotoneConcaveFunction, RoofConfig, convex_roof, library_function,
                            pure_texture)
from qstexture.states import generator, nontexture_state, random_mixed, random_pure

from conftest import FPERP, KET0

G = library_function("linear")
FAST = RoofConfig(restarts=4, max_iterations=200)


def test_pure_texture_examples():
    assert abs(pure_texture(nontexture_state(2), G)) < 1e-12
    assert abs(pure_texture(KET0, G) - 0.5) < 1e-12
    assert abs(pure_texture(FPERP, G) - 1) < 1e-12


def test_library_screen():
    for name in ("linear", "sqrt-complement", "quadratic"):
        assert library_function(name).screen() == []
    for name in ("one-minus-sqrt", "neg-log"):
        fn = library_function(name)
        assert fn.screen()
        with pytest.raises(InvalidFunction):
            pure_texture(KET0, fn)


def test_custom_function_screen():
    bad = MonotoneConcaveFunction("increasing", lambda t: t)
    assert any("f(1)" in p or "increasing" in p for p in bad.screen())
    ok = MonotoneConcaveFunction("half-linear", lambda t: 0.5 * (1 - t))
    rho = random_mixed(2, 2, generator(4))
    assert abs(convex_roof(rho, ok, FAST).value - 0.5 * M.geometric_texture(rho)) < 1e-9


def test_pure_state_roof():
    psi = random_pure(3, generator(2))
    rho = np.outer(psi, psi.conj())
    for name in ("linear", "sqrt-complement"):
        fn = library_function(name)
        assert abs(convex_roof(rho, fn, FAST).value - pure_texture(psi, fn)) < 1e-9


def test_maximally_mixed():
    res = convex_roof(np.eye(2) / 2, G, RoofConfig(ensemble_size=2, restarts=4))
    assert abs(res.value - 0.5) < 1e-9


def test_ensemble_validity_and_oracle():
    for i in range(10):
        rho = random_mixed(3, 3, generator(7, i))
        res = convex_roof(rho, library_function("sqrt-complement"), FAST)
        assert abs(np.sum(res.weights) - 1) < 1e-10
        assert np.max(np.abs(res.density() - rho)) < 1e-8
        assert res.value <= min(res.restart_values) + 1e-15
        g = convex_roof(rho, G, FAST).value
        assert g >= max(0.0, M.geometric_texture(rho)) - 1e-6


def test_nonlinear_roof_is_optimized():
    # a concave non-linear function gains from mixing away from the eigen-ensemble
    rho = random_mixed(2, 2, generator(31))
    fn = library_function("sqrt-complement")
    res = convex_roof(rho, fn, RoofConfig(restarts=8))
    assert res.value < res.restart_values[0] + 1e-15
    assert res.value >= 0


def test_monotone_in_ensemble_size():
    fn = library_function("sqrt-complement")
    for i in range(5):
        rho = random_mixed(2, 2, generator(40, i))
        small = convex_roof(rho, fn, RoofConfig(ensemble_size=2, restarts=4))
        start = np.vstack([small.isometry, np.zeros((1, small.isometry.shape[1]))])
        big = convex_roof(rho, fn, RoofConfig(ensemble_size=3, restarts=4), initial=start)
        assert big.value <= small.value + 1e-8


def test_ensemble_too_small():
    with pytest.raises(EnsembleTooSmall):
        convex_roof(np.eye(3) / 3, G, RoofConfig(ensemble_size=2))


def test_deterministic():
    rho = random_mixed(3, 2, generator(5))
    fn = library_function("quadratic")
    a = convex_roof(rho, fn, FAST)
    b = convex_roof(rho, fn, FAST)
    assert a.value == b.value and a.restart_values == b.restart_values


def test_config_validation():
    with pytest.raises(ValueError):
        RoofConfig(ensemble_size=0)
    with pytest.raises(ValueError):
        RoofConfig(tolerance=0)
    assert math.isfinite(convex_roof(np.eye(2) / 2, G, RoofConfig(restarts=1)).value)
