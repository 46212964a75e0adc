import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qstexture.errors import InvalidAlpha, NotHermitian, NotPSD
from qstexture.linalg import hermitian_eig, psd_power, sqrt_psd, trace_norm
from qstexture.states import generator, random_mixed


def test_identity_spectrum():
    w, _ = hermitian_eig(np.eye(3))
    assert np.allclose(w, [1, 1, 1])


def test_pauli_x_spectrum():
    w, _ = hermitian_eig([[0, 1], [1, 0]])
    assert np.allclose(w, [-1, 1])


def test_random_hermitian_reconstruction():
    rng = generator(11)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = a + a.conj().T
    w, v = hermitian_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs((v * w) @ v.conj().T - h)) < 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(4))) < 1e-10
    assert abs(w.sum() - np.trace(h).real) < 1e-10


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig([[0, 1], [0, 0]])


def test_psd_power_examples():
    assert np.allclose(psd_power(np.diag([4.0, 1.0]), 0.5), np.diag([2.0, 1.0]))
    p = np.full((2, 2), 0.5)
    for a in (0.1, 0.5, 0.9):
        assert np.allclose(psd_power(p, a), p)
    assert np.allclose(sqrt_psd(np.eye(2) / 2), np.diag([0.70710678, 0.70710678]))


def test_psd_power_errors():
    with pytest.raises(NotPSD):
        psd_power(np.diag([1.0, -1e-6]), 0.5)
    with pytest.raises(InvalidAlpha):
        psd_power(np.eye(2), 0.0)
    # tiny negative round-off is clipped
    assert np.allclose(psd_power(np.diag([1.0, -1e-12]), 0.5), np.diag([1.0, 0.0]))


def test_zero_power_convention():
    out = psd_power(np.diag([1.0, 0.0]), 0.3)
    assert out[1, 1] == 0.0


def test_trace_norm():
    assert abs(trace_norm(np.diag([0.5, -0.25])) - 0.75) < 1e-15


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(2, 4),
       a=st.floats(0.1, 3.0), b=st.floats(0.1, 3.0))
def test_power_composition(seed, d, a, b):
    rho = random_mixed(d, d, generator(seed))
    lhs = psd_power(psd_power(rho, a), b)
    assert np.max(np.abs(lhs - psd_power(rho, a * b))) < 1e-9
