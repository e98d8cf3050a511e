"""
Unit tests for spin operators, irreps, CSF bases and fabric symmetry preservation.
"""

import numpy as np
import pytest

from src.python.core.exceptions import SymmetryError, ValidationError
from src.python.fabric import FabricSpec, expand, parameter_count, random_params
from src.python.gates.circuit import circuit_unitary
from src.python.sim.pauli import expectation
from src.python.symmetry import (
    ALPHA,
    BETA,
    IrrepKey,
    classify_edge_case,
    csf_basis,
    edge_case_table,
    enumerate_irreps,
    haar_random_irrep_state,
    irrep_basis,
    irrep_dimension,
    number_operator,
    s_squared_matrix,
    s_squared_pauli,
    s_squared_value,
    sector_indices,
    seniority,
    spin_counts,
    total_number_operator,
)
from src.python.symmetry.irreps import unconstrained_irrep
from src.python.symmetry.operators import spin_qubit, twice_spin


class TestOperators:
    """Test cases for number and spin operators."""

    def test_qubit_layout(self):
        """Test interleaved spin orbitals."""
        assert spin_qubit(2, ALPHA) == 4
        assert spin_qubit(2, BETA) == 5
        with pytest.raises(ValidationError, match="unknown spin"):
            spin_qubit(0, "up")

    def test_spin_counts_and_seniority(self):
        """Test popcounts per spin and single occupations."""
        assert spin_counts(0b0110, 2) == (1, 1)
        assert spin_counts(0b0101, 2) == (2, 0)
        assert seniority(0b0011, 2) == 0
        assert seniority(0b0101, 2) == 2
        assert seniority(0b1001, 2) == 2

    def test_number_operators_diagonal(self):
        """Test N_alpha, N_beta and N on every basis state of M=2."""
        n_alpha = np.diag(number_operator(2, ALPHA).to_dense(4))
        n_beta = np.diag(number_operator(2, BETA).to_dense(4))
        n_total = np.diag(total_number_operator(2).to_dense(4))
        for index in range(16):
            a, b = spin_counts(index, 2)
            assert n_alpha[index] == pytest.approx(a)
            assert n_beta[index] == pytest.approx(b)
            assert n_total[index] == pytest.approx(a + b)

    def test_number_operator_rejects_empty_register(self):
        """Test M must be positive."""
        with pytest.raises(ValidationError):
            number_operator(0, ALPHA)

    def test_s_squared_single_orbital(self):
        """Test singly occupied orbitals are doublets, empty and paired ones singlets."""
        s2 = s_squared_pauli(1).to_dense(2)
        np.testing.assert_allclose(np.diag(s2), [0.0, 0.75, 0.75, 0.0], atol=1e-14)

    def test_s_squared_two_orbital_singlet(self):
        """Test the open-shell singlet and triplet of two orbitals."""
        s2 = s_squared_matrix(2).toarray()
        singlet = np.zeros(16)
        singlet[[0b1001, 0b0110]] = np.sqrt(0.5)
        triplet = np.zeros(16)
        triplet[[0b1001, 0b0110]] = [np.sqrt(0.5), -np.sqrt(0.5)]
        assert singlet @ s2 @ singlet == pytest.approx(0.0, abs=1e-12)
        assert triplet @ s2 @ triplet == pytest.approx(2.0)

    def test_s_squared_commutes_with_numbers(self):
        """Test S^2 is block-diagonal in the (n_alpha, n_beta) sectors."""
        s2 = s_squared_matrix(3).toarray()
        for row, column in zip(*np.nonzero(np.abs(s2) > 1e-12)):
            assert spin_counts(int(row), 3) == spin_counts(int(column), 3)

    @pytest.mark.parametrize("S", [0, 1, 2, 3, 4, 7])
    def test_twice_spin_inverts_eigenvalue(self, S):
        """Test the S^2 eigenvalue ladder."""
        assert twice_spin(s_squared_value(S)) == S


class TestIrrepKey:
    """Test cases for irrep labels."""

    @pytest.mark.parametrize("key,valid", [
        (IrrepKey(4, 2, 2, 0), True),
        (IrrepKey(4, 2, 2, 2), True),
        (IrrepKey(4, 2, 2, 4), True),
        (IrrepKey(4, 2, 2, 1), False),
        (IrrepKey(4, 3, 1, 0), False),
        (IrrepKey(4, 4, 4, 0), True),
        (IrrepKey(4, 4, 4, 2), False),
        (IrrepKey(4, 5, 0, 5), False),
        (IrrepKey(3, 2, 2, 2), True),
    ])
    def test_validity(self, key, valid):
        """Test spin range, parity and hole bound."""
        assert key.is_valid() is valid

    def test_parse(self):
        """Test the 'n_alpha,n_beta,S' form."""
        key = IrrepKey.parse(6, "3,3,0")
        assert key == IrrepKey(6, 3, 3, 0)
        assert key.n_electrons == 6
        assert key.sector == (3, 3)
        assert key.to_dict() == {"M": 6, "n_alpha": 3, "n_beta": 3, "S": 0}
        with pytest.raises(ValidationError, match="n_alpha,n_beta,S"):
            IrrepKey.parse(6, "3,3")

    def test_validate_raises(self):
        """Test invalid labels raise."""
        with pytest.raises(ValidationError, match="invalid irrep"):
            irrep_dimension(IrrepKey(4, 2, 2, 1))


class TestDimensions:
    """Test cases for irrep dimensions and enumeration."""

    @pytest.mark.parametrize("key,dimension", [
        (IrrepKey(4, 2, 2, 0), 20),
        (IrrepKey(6, 3, 3, 0), 175),
        (IrrepKey(10, 5, 5, 0), 19404),
        (IrrepKey(2, 1, 1, 2), 1),
        (IrrepKey(4, 0, 0, 0), 1),
    ])
    def test_closed_form(self, key, dimension):
        """Test known dimensions."""
        assert irrep_dimension(key) == dimension

    @pytest.mark.parametrize("M,count,total", [(2, 10, 16), (4, 35, 256), (6, 84, 4096)])
    def test_enumeration(self, M, count, total):
        """Test irrep counts and that they tile the Fock space."""
        irreps = enumerate_irreps(M)
        assert len(irreps) == count
        assert sum(dim for _, dim in irreps) == total

    def test_enumeration_order(self):
        """Test ordering by (n_alpha, n_beta, S)."""
        keys = [(k.n_alpha, k.n_beta, k.S) for k, _ in enumerate_irreps(3)]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("M", [1, 2, 3, 4])
    def test_closed_form_matches_diagonalization(self, M):
        """Test CSF block sizes against the closed form."""
        for key, dimension in enumerate_irreps(M):
            blocks = csf_basis(M, key.n_alpha, key.n_beta).block_dimensions()
            assert blocks[key.S] == dimension

    def test_enumerate_rejects_empty_register(self):
        """Test M must be positive."""
        with pytest.raises(ValidationError):
            enumerate_irreps(0)


class TestCSFBasis:
    """Test cases for sector CSF bases."""

    def test_sector_indices(self):
        """Test sector determinants."""
        np.testing.assert_array_equal(sector_indices(2, 1, 1), [0b0011, 0b0110, 0b1001, 0b1100])
        with pytest.raises(ValidationError):
            sector_indices(2, 3, 0)

    def test_blocks_are_orthonormal_eigenspaces(self):
        """Test CSF columns are orthonormal S^2 eigenvectors."""
        basis = csf_basis(4, 2, 2)
        s2 = s_squared_matrix(4)[basis.det_indices][:, basis.det_indices].toarray()
        assert basis.dimension == 36
        assert basis.block_dimensions() == {0: 20, 2: 15, 4: 1}
        for S, block in basis.csf_blocks.items():
            np.testing.assert_allclose(block.T @ block, np.eye(block.shape[1]), atol=1e-12)
            np.testing.assert_allclose(s2 @ block, s_squared_value(S) * block, atol=1e-10)

    def test_basis_is_deterministic(self):
        """Test the largest component of each column is positive."""
        block = irrep_basis(IrrepKey(3, 2, 1, 1))
        for column in block.T:
            assert column[np.argmax(np.abs(column))] > 0

    def test_embed_and_project(self):
        """Test CSF coefficients survive the determinant round trip."""
        basis = csf_basis(3, 2, 1)
        coefficients = np.zeros(basis.block(1).shape[1])
        coefficients[0] = 1.0
        state = basis.embed(1, coefficients)
        assert state.norm() == pytest.approx(1.0)
        np.testing.assert_allclose(basis.project(1, state), coefficients, atol=1e-12)
        np.testing.assert_allclose(basis.project(3, state), 0.0, atol=1e-12)

    def test_missing_block(self):
        """Test asking for an absent spin."""
        with pytest.raises(SymmetryError, match="no S=4"):
            csf_basis(2, 1, 1).block(4)

    def test_dense_bound(self):
        """Test large registers are refused."""
        with pytest.raises(ValidationError, match="M <= 7"):
            csf_basis(8, 1, 1)


class TestHaarStates:
    """Test cases for Haar-random in-irrep states."""

    def test_state_lies_in_irrep(self):
        """Test normalization, sector support and S^2 eigenvalue."""
        key = IrrepKey(4, 2, 2, 0)
        state = haar_random_irrep_state(key, seed=3)
        assert state.norm() == pytest.approx(1.0)
        outside = np.setdiff1d(np.arange(256), sector_indices(4, 2, 2))
        np.testing.assert_allclose(state.amplitudes[outside], 0.0)
        assert expectation(state, s_squared_pauli(4)) == pytest.approx(0.0, abs=1e-10)

    def test_seeded(self):
        """Test the same seed gives the same state."""
        key = IrrepKey(3, 2, 1, 1)
        a = haar_random_irrep_state(key, seed=7)
        b = haar_random_irrep_state(key, seed=7)
        c = haar_random_irrep_state(key, seed=8)
        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
        assert not np.allclose(a.amplitudes, c.amplitudes)

    def test_invalid_irrep(self):
        """Test invalid labels are rejected."""
        with pytest.raises(ValidationError):
            haar_random_irrep_state(IrrepKey(3, 1, 1, 1), seed=0)


class TestEdgeCases:
    """Test cases for the Q-fabric universality classifier."""

    def test_unconstrained_irrep(self):
        """Test high-spin electrons are stripped."""
        assert unconstrained_irrep(IrrepKey(4, 0, 2, 2)) == IrrepKey(2, 0, 0, 0)
        assert unconstrained_irrep(IrrepKey(4, 2, 2, 2)) == IrrepKey(2, 1, 1, 0)
        assert unconstrained_irrep(IrrepKey(4, 3, 3, 2)) == IrrepKey(2, 2, 2, 0)

    @pytest.mark.parametrize("key,universal", [
        (IrrepKey(4, 2, 2, 0), True),
        (IrrepKey(4, 0, 2, 2), False),
        (IrrepKey(4, 2, 2, 2), True),
        (IrrepKey(4, 3, 3, 2), False),
        (IrrepKey(4, 1, 1, 2), False),
        (IrrepKey(4, 1, 0, 1), True),
        (IrrepKey(4, 2, 2, 4), True),
    ])
    def test_classification(self, key, universal):
        """Test universal and non-universal irreps."""
        assert classify_edge_case(key)[0] is universal

    @pytest.mark.parametrize("M,count,total", [(4, 6, 36), (6, 24, 400)])
    def test_tables(self, M, count, total):
        """Test the non-universal irrep tables."""
        table = edge_case_table(M)
        assert len(table) == count
        assert sum(dim for _, dim in table) == total

    def test_small_registers_have_no_edge_cases(self):
        """Test M=2 leaves no room for a non-universal irrep."""
        assert edge_case_table(2) == []


FABRICS = [
    ("Q", "identity"),
    ("Q", "OR_pi"),
    ("Q", "OFSWAP"),
    ("F", "identity"),
    ("F_prime", "identity"),
    ("F_double_prime", "identity"),
    ("OR_only", "identity"),
    ("PX_only", "identity"),
]


def _commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a @ b - b @ a)))


class TestFabricSymmetry:
    """Test fermionic fabrics conserve particle numbers and total spin."""

    @pytest.mark.parametrize("kind,pi_gate", FABRICS)
    @pytest.mark.parametrize("M", [2, 3])
    def test_fabric_commutes_with_symmetries(self, kind, pi_gate, M):
        """Test random fabrics commute with N_alpha, N_beta and S^2."""
        spec = FabricSpec(kind, M, 3, pi_gate=pi_gate)
        gates = expand(spec)
        n_qubits = 2 * M
        n_alpha = number_operator(M, ALPHA).to_dense(n_qubits)
        n_beta = number_operator(M, BETA).to_dense(n_qubits)
        s2 = s_squared_matrix(M).toarray()
        for seed in range(5):
            unitary = circuit_unitary(gates, random_params(spec, seed).values, n_qubits)
            np.testing.assert_allclose(unitary.T @ unitary, np.eye(1 << n_qubits), atol=1e-12)
            assert _commutator_norm(unitary, n_alpha) < 1e-12
            assert _commutator_norm(unitary, n_beta) < 1e-12
            assert _commutator_norm(unitary, s2) < 1e-10

    @pytest.mark.slow
    @pytest.mark.parametrize("kind,pi_gate", [("Q", "OR_pi"), ("F", "identity")])
    def test_csf_columns_stay_in_irrep(self, kind, pi_gate):
        """Test every CSF of M=4 is mapped inside its own irrep."""
        M = 4
        spec = FabricSpec(kind, M, 3, pi_gate=pi_gate)
        unitary = circuit_unitary(expand(spec), random_params(spec, 11).values, 2 * M)
        s2 = s_squared_matrix(M)
        for key, _ in enumerate_irreps(M):
            basis = csf_basis(M, key.n_alpha, key.n_beta)
            block = basis.block(key.S)
            inputs = np.zeros((1 << (2 * M), block.shape[1]))
            inputs[basis.det_indices] = block
            outputs = unitary @ inputs
            leakage = np.delete(outputs, basis.det_indices, axis=0)
            assert np.max(np.abs(leakage), initial=0.0) < 1e-12
            values = np.einsum("ij,ij->j", outputs, s2 @ outputs)
            np.testing.assert_allclose(values, s_squared_value(key.S), atol=1e-10)

    def test_brick_fabrics_preserve_hamming_weight(self):
        """Test SO4 fabrics mix weights while Hamming-weight fabrics do not."""
        for kind, preserving in (("HammingGivens", True), ("Hamming8", True), ("SO4", False)):
            spec = FabricSpec(kind, 4, 3)
            unitary = circuit_unitary(expand(spec), random_params(spec, 2).values, 4)
            weights = np.array([bin(i).count("1") for i in range(16)])
            mixing = np.abs(unitary[weights[:, None] != weights[None, :]])
            assert bool(np.max(mixing) < 1e-12) is preserving
            assert parameter_count(spec) > 0
