import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entangle_tensor.errors import DomainError
from entangle_tensor.qcore import (
    PAULIS,
    SIGMA_0,
    SIGMA_1,
    SIGMA_3,
    GeneratorSet,
    PureState,
    density,
    expectation,
    kron,
    partial_trace,
    pauli_generators,
    schmidt_state,
)

from conftest import lambda_grid


@pytest.mark.parametrize("lam, expected", [
    (0.5, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)]),
    (1.0, [1, 0, 0, 0]),
    (0.25, [0.5, 0, 0, np.sqrt(0.75)]),
])
def test_schmidt_state_amplitudes(lam, expected):
    np.testing.assert_allclose(schmidt_state(lam).amplitudes, expected, atol=1e-15)


@pytest.mark.parametrize("lam", [-0.1, 1.0000001, np.nan])
def test_schmidt_state_domain(lam):
    with pytest.raises(DomainError):
        schmidt_state(lam)


@pytest.mark.parametrize("lam", lambda_grid(0.01))
def test_schmidt_state_normalized(lam):
    amps = schmidt_state(lam).amplitudes
    assert abs(np.vdot(amps, amps).real - 1) < 1e-12


def test_state_rejects_unnormalized():
    with pytest.raises(DomainError):
        PureState([1.0, 1.0])
    assert PureState.normalized([1.0, 1.0]).dim == 2


def test_state_is_immutable():
    psi = schmidt_state(0.3)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


def test_kron_examples():
    np.testing.assert_array_equal(kron(SIGMA_0, SIGMA_0), np.eye(4))
    np.testing.assert_array_equal(kron(SIGMA_3, SIGMA_0), np.diag([1, 1, -1, -1]))
    np.testing.assert_array_equal(kron(SIGMA_1, SIGMA_1), np.fliplr(np.eye(4)))


def test_pauli_generators_shape_and_order():
    gens = pauli_generators()
    assert len(gens) == 6
    for k, s in enumerate(PAULIS):
        np.testing.assert_array_equal(gens[k], np.kron(s, np.eye(2)))
        np.testing.assert_array_equal(gens[k + 3], np.kron(np.eye(2), s))
    for g in gens:
        np.testing.assert_allclose(g @ g, np.eye(4), atol=1e-15)
        np.testing.assert_allclose(g, g.conj().T)
        assert abs(np.trace(g)) < 1e-15
    ket00 = np.array([1, 0, 0, 0], dtype=complex)
    np.testing.assert_array_equal(gens[2] @ ket00, ket00)


def test_pauli_algebra_on_first_factor():
    levi = np.zeros((3, 3, 3))
    for (a, b, c), sign in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                            (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
        levi[a, b, c] = sign
    gens = pauli_generators()
    ident = np.eye(4)
    for j in range(3):
        for k in range(3):
            expected = (j == k) * ident + 1j * sum(levi[j, k, l] * gens[l] for l in range(3))
            np.testing.assert_allclose(gens[j] @ gens[k], expected, atol=1e-15)


def test_generator_set_validation():
    with pytest.raises(DomainError):
        GeneratorSet((np.array([[0, 1], [0, 0]]),))
    with pytest.raises(DomainError):
        GeneratorSet((np.eye(2), np.eye(4)))
    with pytest.raises(DomainError):
        GeneratorSet(())


@pytest.mark.parametrize("lam, op, expected", [
    (0.25, kron(SIGMA_3, SIGMA_0), -0.5),
    (0.5, kron(SIGMA_3, SIGMA_0), 0.0),
    (0.5, kron(SIGMA_1, SIGMA_1), 1.0),
])
def test_expectation_examples(lam, op, expected):
    assert expectation(schmidt_state(lam), op) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("lam", lambda_grid(0.05))
def test_expectation_sigma3_is_2lambda_minus_1(lam):
    assert expectation(schmidt_state(lam), kron(SIGMA_3, SIGMA_0)).real == pytest.approx(2 * lam - 1, abs=1e-15)


def test_expectation_dimension_mismatch():
    with pytest.raises(DomainError):
        expectation(schmidt_state(0.3), np.eye(2))


def test_density_examples():
    np.testing.assert_allclose(density(schmidt_state(1.0)).matrix, np.diag([1, 0, 0, 0]))
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(density(schmidt_state(0.5)).matrix, expected, atol=1e-15)
    rho = density(schmidt_state(0.3)).matrix
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-12)


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace(density(schmidt_state(0.25)), "A").matrix, np.diag([0.25, 0.75]), atol=1e-15)
    np.testing.assert_allclose(partial_trace(density(schmidt_state(0.5)), "B").matrix, np.diag([0.5, 0.5]), atol=1e-15)
    assert np.trace(partial_trace(density(schmidt_state(0.7)), "A").matrix).real == pytest.approx(1, abs=1e-12)


def test_partial_trace_errors():
    with pytest.raises(DomainError):
        partial_trace(np.eye(2) / 2, "A")
    with pytest.raises(DomainError):
        partial_trace(density(schmidt_state(0.3)), "C")


def test_partial_trace_product_state():
    a = np.array([0.6, 0.8j])
    b = np.array([1, 1]) / np.sqrt(2)
    rho = density(PureState(np.kron(a, b)))
    np.testing.assert_allclose(partial_trace(rho, "A").matrix, np.outer(a, a.conj()), atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, "B").matrix, np.outer(b, b.conj()), atol=1e-15)


@pytest.mark.parametrize("lam", lambda_grid(0.05))
def test_schmidt_reduced_states_agree(lam):
    rho = density(schmidt_state(lam))
    expected = np.diag([lam, 1 - lam])
    np.testing.assert_allclose(partial_trace(rho, "A").matrix, expected, atol=1e-12)
    np.testing.assert_allclose(partial_trace(rho, "B").matrix, expected, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=8, max_size=8), st.integers(0, 5))
def test_expectation_of_hermitian_is_real(parts, g):
    z = np.array(parts[:4]) + 1j * np.array(parts[4:])
    if np.linalg.norm(z) < 1e-3:
        return
    psi = PureState.normalized(z)
    assert abs(expectation(psi, pauli_generators()[g]).imag) < 1e-12
