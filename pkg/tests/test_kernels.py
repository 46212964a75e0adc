import numpy as np
import pytest

from qstexture import kernels
from qstexture.roof import RoofConfig, convex_roof, library_function
from qstexture.states import generator, nontexture_state, random_mixed

BACKENDS = kernels.backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


def _roof_inputs(seed, d=3, m=5):
    rho = random_mixed(d, d, generator(seed))
    w, v = np.linalg.eigh(rho)
    c = nontexture_state(d).conj() @ (v * np.sqrt(w))
    rng = generator(seed, 1)
    x = rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
    return w, c, x, rng


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@pytest.mark.parametrize("fn_id", [kernels.LINEAR, kernels.SQRT_COMPLEMENT, kernels.QUADRATIC,
                                   kernels.ONE_MINUS_SQRT])
def test_objective_agrees(fn_id):
    for seed in range(10):
        w, c, x, _ = _roof_inputs(seed)
        a = BACKENDS["python"].roof_objective(w, c, fn_id, x)
        b = BACKENDS["compiled"].roof_objective(w, c, fn_id, x)
        assert abs(a - b) < 1e-12


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
def test_search_agrees():
    for seed in range(5):
        w, c, x, rng = _roof_inputs(seed)
        n = 200
        idx = rng.integers(0, 2 * x.size, size=n)
        noise = rng.standard_normal(n)
        args = (w, c, kernels.SQRT_COMPLEMENT, x, idx, noise, 0.5, 0.9, 1.5, 1e-10)
        va, xa, na = BACKENDS["python"].roof_search(*args)
        vb, xb, nb = BACKENDS["compiled"].roof_search(*args)
        assert na == nb
        assert abs(va - vb) < 1e-10
        assert np.max(np.abs(xa - xb)) < 1e-8


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
def test_grid_agrees():
    for seed in range(10):
        rng = generator(seed)
        a, b, m, n = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        s1 = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
        s2 = np.sqrt(abs(m) ** 2 + abs(n) ** 2)
        args = (a / s1, b / s1, m / s2, n / s2, 16, 10, 0.3, 0.7)
        assert abs(BACKENDS["python"].maxprob_grid(*args)
                   - BACKENDS["compiled"].maxprob_grid(*args)) < 1e-12


def test_callable_only_in_python_backend():
    w, c, x, _ = _roof_inputs(0)
    v = BACKENDS["python"].roof_objective(w, c, lambda t: 1 - t, x)
    assert abs(v - BACKENDS["python"].roof_objective(w, c, kernels.LINEAR, x)) < 1e-14


def test_roof_end_to_end_matches_geometric():
    rho = random_mixed(2, 2, generator(3))
    res = convex_roof(rho, library_function("linear"), RoofConfig(restarts=2))
    assert abs(res.value - (1 - np.real(np.sum(rho)) / 2)) < 1e-9


def test_fallback_forced_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, QSTEXTURE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import qstexture; print(qstexture.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
