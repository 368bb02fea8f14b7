import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import cubic_eigenvalues
from tantheta.errors import ConvergenceError, DomainError
from tantheta.linalg import (
    angle_to_subspace,
    as_symmetric,
    coordinate_angle,
    eigensolve,
    spectral_norm,
    with_spectrum,
)


def check_decomposition(M, w, V, tol=1e-10):
    scale = max(1.0, np.linalg.norm(M, 2))
    assert np.all(np.diff(w) >= 0)
    assert np.linalg.norm((V * w) @ V.T - M) <= tol * scale
    assert np.linalg.norm(V.T @ V - np.eye(len(w))) <= tol


def test_identity():
    w, V = eigensolve(np.eye(5))
    np.testing.assert_array_equal(w, np.ones(5))
    check_decomposition(np.eye(5), w, V)


def test_diagonal_permutation():
    w, V = eigensolve(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(w, [1, 2, 3])
    np.testing.assert_array_equal(np.abs(V), np.eye(3)[:, [1, 2, 0]])


def test_rem2_witness_eigenvector():
    a = 1 / math.sqrt(2)
    L = np.array([[0, a, a], [a, -1, 0], [a, 0, 1]])
    w, V = eigensolve(L)
    k = int(np.argmin(np.abs(w)))
    assert abs(w[k]) < 1e-14
    f = V[:, k] / V[0, k]
    np.testing.assert_allclose(f, [1, a, -a], atol=1e-14)


def test_empty_and_zero():
    w, V = eigensolve(np.zeros((4, 4)))
    np.testing.assert_array_equal(w, 0)
    w, _ = eigensolve([[2.5]])
    assert w[0] == 2.5


def test_rejects_asymmetric():
    with pytest.raises(DomainError):
        as_symmetric([[1.0, 2.0], [0.0, 1.0]])


def test_sweep_cap():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((20, 20))
    with pytest.raises(ConvergenceError):
        eigensolve(A + A.T, max_sweeps=1)


@pytest.mark.parametrize("n", [2, 3, 7, 16, 33, 64])
def test_random_reconstruction(n):
    rng = np.random.default_rng(n)
    A = rng.standard_normal((n, n))
    A = A + A.T
    w, V = eigensolve(A)
    check_decomposition(A, w, V)


def test_clustered_spectrum():
    rng = np.random.default_rng(11)
    spec = np.array([1.0, 1.0, 1.0 + 1e-13, 2.0, 2.0, -3.0, 1e-9])
    A = with_spectrum(spec, rng)
    w, V = eigensolve(A)
    np.testing.assert_allclose(w, np.sort(spec), atol=1e-13)
    check_decomposition(A, w, V)


sym3 = arrays(np.float64, (3, 3), elements=st.floats(-10, 10, allow_subnormal=False))


@given(sym3)
def test_matches_cubic_oracle(M):
    M = M + M.T
    expected = cubic_eigenvalues(M)
    # the trigonometric formula loses ~sqrt(eps) at coincident roots
    assume(np.min(np.diff(expected)) > 1e-3 * max(1, np.abs(M).max()))
    np.testing.assert_allclose(eigensolve(M).eigenvalues, expected, atol=1e-9 * max(1, np.abs(M).max()))


def test_spectral_norm_examples():
    assert spectral_norm(np.zeros((2, 3))) == 0
    assert spectral_norm([[3.0, 4.0]]) == pytest.approx(5.0, rel=1e-14)
    assert spectral_norm([[0.3, 1.7]]) == pytest.approx(math.hypot(0.3, 1.7), rel=1e-14)


@settings(max_examples=40)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_spectral_norm_transpose(n, m, seed):
    B = np.random.default_rng(seed).standard_normal((n, m))
    s = spectral_norm(B)
    assert s == pytest.approx(spectral_norm(B.T), rel=1e-12)
    assert s == pytest.approx(np.linalg.norm(B, 2), rel=1e-10)


def test_angle_examples():
    basis = np.eye(4)[:, :2]
    assert angle_to_subspace([1.0, 2.0, 0, 0], basis)[0] == 0
    theta, t = angle_to_subspace([0, 0, 1.0, 0], basis)
    assert theta == pytest.approx(math.pi / 2) and t == math.inf
    xm, xp = 0.3, -0.4
    theta, t = angle_to_subspace([1.0, xm, xp], np.eye(3)[:, :1])
    assert t == pytest.approx(math.hypot(xm, xp), rel=1e-15)
    assert coordinate_angle([1.0, xm, xp], 1)[1] == pytest.approx(t, rel=1e-15)


def test_angle_errors():
    with pytest.raises(DomainError):
        angle_to_subspace([0.0, 0.0], np.eye(2)[:, :1])
    with pytest.raises(DomainError):
        angle_to_subspace([1.0, 0.0], np.array([[1.0], [1.0]]))


@given(arrays(np.float64, 5, elements=st.floats(-1e3, 1e3)), st.floats(1e-3, 1e3), st.booleans())
def test_angle_scale_invariant(f, c, flip):
    if np.linalg.norm(f) < 1e-6:
        return
    Q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((5, 2)))
    c = -c if flip else c
    t1 = angle_to_subspace(f, Q)
    t2 = angle_to_subspace(c * f, Q)
    assert t1[0] == pytest.approx(t2[0], rel=1e-12, abs=1e-15)
