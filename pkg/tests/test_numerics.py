import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from gcfloer.numerics import (
    NonConvergenceError,
    check_hermitian,
    complex_eigenvalues,
    hermitian_eigenvalues,
    integrate_periodic,
)


def random_hermitian(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return g + g.conj().T


def test_check_hermitian_accepts_and_rejects():
    a = np.array([[1.0, 2.0 + 1j], [2.0 - 1j, 3.0]])
    check_hermitian(a)
    with pytest.raises(ValueError, match="not Hermitian"):
        check_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError, match="square"):
        check_hermitian(np.ones((2, 3)))


def test_hermitian_eigenvalues_against_numpy():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        a = random_hermitian(rng, n)
        got = hermitian_eigenvalues(a)
        want = np.linalg.eigvalsh(a)[::-1]
        assert np.abs(got - want).max() < 1e-10 * max(1.0, np.abs(a).max())


def test_hermitian_eigenvectors_diagonalize():
    rng = np.random.default_rng(1)
    a = random_hermitian(rng, 6)
    eigs, v = hermitian_eigenvalues(a, return_vectors=True)
    assert np.abs(a @ v - v @ np.diag(eigs)).max() < 1e-10
    assert np.abs(v.conj().T @ v - np.eye(6)).max() < 1e-10
    assert np.all(np.diff(eigs) <= 0)


def test_hermitian_eigenvalues_degenerate_spectrum():
    rng = np.random.default_rng(2)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, _ = np.linalg.qr(g)
    a = q @ np.diag([2.0, 2.0, -1.0, -1.0]) @ q.conj().T
    got = hermitian_eigenvalues(a)
    assert np.abs(got - [2.0, 2.0, -1.0, -1.0]).max() < 1e-10


def _match_multisets(a, b):
    cost = np.abs(np.subtract.outer(a, b))
    r, c = linear_sum_assignment(cost)
    return cost[r, c].max()


def test_complex_eigenvalues_against_numpy():
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(1, 9))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        got = complex_eigenvalues(a)
        want = np.linalg.eigvals(a)
        assert _match_multisets(got, want) < 1e-8 * max(1.0, np.abs(a).max())


def test_complex_eigenvalues_sorted_and_sized():
    a = np.diag([3.0, -1.0, 2.0]).astype(complex)
    got = complex_eigenvalues(a)
    assert np.allclose(got, [-1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        complex_eigenvalues(np.eye(13))


def test_complex_eigenvalues_nilpotent():
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    assert np.abs(complex_eigenvalues(a)).max() < 1e-12


def test_integrate_periodic_trig():
    assert abs(integrate_periodic(lambda t: 1.0 - np.cos(t)) - 1.0) < 1e-12
    assert abs(integrate_periodic(np.sin)) < 1e-12
    assert abs(integrate_periodic(lambda t: np.exp(3j * t))) < 1e-12


def test_integrate_periodic_rejects_bad_tol():
    with pytest.raises(ValueError):
        integrate_periodic(np.cos, tol=0.0)


def test_nonconvergence_carries_estimate():
    # a kinked integrand: the quadrature cannot hit 1e-14 in two doublings
    f = lambda t: np.abs(np.sin((t - 1.0) / 2.0))  # kink at an interior point
    with pytest.raises(NonConvergenceError) as info:
        integrate_periodic(f, tol=1e-14, max_doublings=2)
    assert info.value.last_estimate is not None


@settings(max_examples=50, deadline=None)
@given(
    coeffs=st.lists(
        st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=5,
    )
)
def test_integrate_periodic_picks_out_constant_term(coeffs):
    def f(theta):
        return sum(c * np.exp(1j * k * theta) for k, c in enumerate(coeffs))

    got = integrate_periodic(f, tol=1e-11)
    assert abs(got - coeffs[0]) < 1e-9
