import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import random_density, random_matrix
from bound_activation.errors import InvalidInputError
from bound_activation.linalg import (DensityMatrix, StateVector, eig_hermitian, kron, max_abs, overlap,
                                     partial_trace, partial_trace_matrix, partial_transpose,
                                     partial_transpose_matrix, permute_subsystems, pure)
from bound_activation.protocol import xor_gate
from bound_activation.states import max_entangled, psi_plus, rho_free, sigma_alpha, sigma_plus

seeds = st.integers(0, 2**32 - 1)


# -- kron ---------------------------------------------------------------------

def test_kron_identities():
    assert max_abs(kron(np.eye(2), np.eye(3)) - np.eye(6)) == 0
    assert max_abs(kron(np.diag([1, 0]), np.eye(2)) - np.diag([1, 1, 0, 0])) == 0


def test_kron_bilateral_xor_is_unitary():
    u = xor_gate(3).matrix
    uu = kron(u, u)
    assert uu.shape == (81, 81)
    assert max_abs(uu.conj().T @ uu - np.eye(81)) <= 1e-12


@given(seeds, st.integers(1, 3), st.integers(1, 3))
def test_kron_matches_loop_oracle(seed, n, m):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, n), random_matrix(rng, m)
    assert max_abs(kron(a, b) - oracles.kron(a, b)) <= 1e-12


@given(seeds)
def test_kron_mixed_product_and_associativity(seed):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, 2), random_matrix(rng, 2)
    c, d = random_matrix(rng, 3), random_matrix(rng, 3)
    assert max_abs(kron(a @ b, c @ d) - kron(a, c) @ kron(b, d)) <= 1e-12
    assert max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12


def test_kron_rejects_non_square():
    with pytest.raises(InvalidInputError):
        kron(np.ones((2, 3)), np.eye(2))
    with pytest.raises(InvalidInputError):
        kron(np.array([[np.nan]]), np.eye(2))


# -- partial trace ------------------------------------------------------------

def test_partial_trace_of_max_entangled_is_maximally_mixed():
    red = partial_trace(psi_plus(), [0])
    assert red.dims == (3,)
    assert max_abs(red.matrix - np.eye(3) / 3) <= 1e-15


def test_partial_trace_of_product():
    rng = np.random.default_rng(3)
    rho = DensityMatrix(random_density(rng, 9), (3, 3))
    tau = DensityMatrix(random_density(rng, 9), (3, 3))
    joint = DensityMatrix(kron(rho.matrix, tau.matrix), (3, 3, 3, 3))
    assert max_abs(partial_trace(joint, [0, 1]).matrix - rho.matrix) <= 1e-12
    assert max_abs(partial_trace(joint, [2, 3]).matrix - tau.matrix) <= 1e-12


def test_partial_trace_of_sigma_plus():
    # each of |01>, |12>, |20> contributes one third to a distinct |i><i|
    assert max_abs(partial_trace(sigma_plus(), 0).matrix - np.eye(3) / 3) <= 1e-15
    assert max_abs(partial_trace(sigma_plus(), 1).matrix - np.eye(3) / 3) <= 1e-15


@pytest.mark.parametrize("dims,keep", [((2, 3), [0]), ((2, 3), [1]), ((2, 2, 3), [0, 2]),
                                       ((3, 3, 3), [1]), ((2, 3, 2), [2, 0])])
def test_partial_trace_matches_loop_oracle(dims, keep):
    rng = np.random.default_rng(11)
    m = random_density(rng, math.prod(dims))
    assert max_abs(partial_trace_matrix(m, dims, keep) - oracles.partial_trace(m, dims, keep)) <= 1e-12


def test_partial_trace_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(5)
    rho = DensityMatrix(random_density(rng, 12), (2, 3, 2))
    for keep in ([0], [1], [2], [0, 1], [1, 2], [0, 2]):
        red = partial_trace(rho, keep)
        assert abs(np.trace(red.matrix) - 1) <= 1e-12
        assert max_abs(red.matrix - red.matrix.conj().T) <= 1e-12


@pytest.mark.parametrize("keep", [[], [2], [-1]])
def test_partial_trace_rejects_bad_subsystems(keep):
    with pytest.raises(InvalidInputError):
        partial_trace(psi_plus(), keep)


# -- partial transpose --------------------------------------------------------

def test_partial_transpose_index_convention():
    m = np.arange(16, dtype=complex).reshape(4, 4)
    expected = np.array([[0, 4, 2, 6], [1, 5, 3, 7], [8, 12, 10, 14], [9, 13, 11, 15]])
    assert max_abs(partial_transpose_matrix(m, (2, 2), 1) - expected) == 0
    m9 = np.arange(81, dtype=complex).reshape(9, 9)
    pt = partial_transpose_matrix(m9, (3, 3), 1)
    for i, j, k, l in itertools.product(range(3), repeat=4):
        assert pt[3 * i + j, 3 * k + l] == m9[3 * i + l, 3 * k + j]


@given(seeds)
def test_partial_transpose_matches_oracle_and_is_involution(seed):
    rng = np.random.default_rng(seed)
    rho = DensityMatrix(random_density(rng, 6), (2, 3))
    for sub in (0, 1):
        pt = partial_transpose(rho, sub)
        assert max_abs(pt - oracles.partial_transpose(rho.matrix, (2, 3), sub)) <= 1e-15
        assert max_abs(partial_transpose_matrix(pt, (2, 3), sub) - rho.matrix) == 0
        assert abs(np.trace(pt) - 1) <= 1e-12
        assert max_abs(pt - pt.conj().T) <= 1e-12


def test_partial_transpose_of_product():
    rng = np.random.default_rng(8)
    a, b = random_density(rng, 3), random_density(rng, 3)
    rho = DensityMatrix(kron(a, b), (3, 3))
    assert max_abs(partial_transpose(rho, 1) - kron(a, b.T)) <= 1e-15


def test_partial_transpose_of_two_qubit_bell_state():
    bell = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2), (2, 2))
    assert abs(eig_hermitian(partial_transpose(pure(bell), 1))[0] + 0.5) <= 1e-12


@given(seeds)
def test_partial_trace_ignores_transpose_on_traced_subsystem(seed):
    rng = np.random.default_rng(seed)
    m = random_density(rng, 9)
    pt = partial_transpose_matrix(m, (3, 3), 1)
    assert max_abs(partial_trace_matrix(pt, (3, 3), [0]) - partial_trace_matrix(m, (3, 3), [0])) <= 1e-14


# -- eigensolver --------------------------------------------------------------

def test_eig_small_cases():
    assert np.allclose(eig_hermitian(np.diag([3.0, 1.0, 2.0])), [1, 2, 3], atol=1e-15)
    assert np.allclose(eig_hermitian([[0, 1], [1, 0]]), [-1, 1], atol=1e-15)


def test_eig_rejects_non_hermitian():
    with pytest.raises(InvalidInputError):
        eig_hermitian([[0, 1], [0, 0]])


def test_eig_sigma4_partial_transpose_has_zero_minimum():
    assert abs(eig_hermitian(partial_transpose(sigma_alpha(4.0)))[0]) <= 1e-10


@given(seeds, st.integers(1, 12))
def test_eig_matches_lapack(seed, n):
    rng = np.random.default_rng(seed)
    a = random_matrix(rng, n)
    h = a + a.conj().T
    lam = eig_hermitian(h)
    assert np.all(np.diff(lam) >= 0)
    assert lam.size == n
    assert abs(lam.sum() - np.trace(h).real) <= 1e-10
    assert max_abs(lam - np.linalg.eigvalsh(h)) <= 1e-10 * max(1.0, max_abs(h))


def test_eig_81_dimensional():
    rng = np.random.default_rng(81)
    h = random_density(rng, 81)
    assert max_abs(eig_hermitian(h) - np.linalg.eigvalsh(h)) <= 1e-12


@given(seeds)
def test_eig_invariant_under_basis_permutations(seed):
    rng = np.random.default_rng(seed)
    h = random_density(rng, 9)
    p3 = np.eye(3)[rng.permutation(3)]
    q3 = np.eye(3)[rng.permutation(3)]
    u = kron(p3, q3)
    assert max_abs(eig_hermitian(u @ h @ u.conj().T) - eig_hermitian(h)) <= 1e-10


def test_eig_degenerate_spectrum():
    assert max_abs(eig_hermitian(np.eye(5)) - np.ones(5)) == 0
    assert max_abs(eig_hermitian(np.zeros((3, 3)))) == 0


# -- overlap and validated types ---------------------------------------------

def test_overlap_examples():
    psi = max_entangled(3)
    assert abs(overlap(psi, psi_plus()) - 1) <= 1e-15
    assert overlap(psi, sigma_plus()) == 0
    for alpha in (2.0, 3.5, 5.0):
        assert abs(overlap(psi, sigma_alpha(alpha)) - 2 / 7) <= 1e-15


def test_overlap_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        overlap(max_entangled(2), psi_plus())


def test_density_matrix_rejects_invalid():
    with pytest.raises(InvalidInputError):
        DensityMatrix(np.eye(3), (3,))                       # trace 3
    with pytest.raises(InvalidInputError):
        DensityMatrix([[0.5, 0.5], [0, 0.5]], (2,))            # not Hermitian
    with pytest.raises(InvalidInputError):
        DensityMatrix(np.diag([1.5, -0.5]), (2,))             # not PSD
    with pytest.raises(InvalidInputError):
        DensityMatrix(np.eye(4) / 4, (2, 3))                  # dims do not factor


def test_density_matrix_is_read_only():
    rho = rho_free(0.5)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_state_vector_normalisation():
    with pytest.raises(InvalidInputError):
        StateVector(np.array([1.0, 1.0]), (2,))
    v = StateVector.normalized([1.0, 1.0j])
    assert abs(np.vdot(v.amplitudes, v.amplitudes) - 1) <= 1e-12


def test_permute_subsystems_swaps_factors():
    rng = np.random.default_rng(2)
    a, b = random_matrix(rng, 2), random_matrix(rng, 3)
    assert max_abs(permute_subsystems(kron(a, b), (2, 3), (1, 0)) - kron(b, a)) <= 1e-15
