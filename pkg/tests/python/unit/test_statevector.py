"""
Unit tests for the statevector simulator and Pauli algebra.
"""

import numpy as np
import pytest

from src.python.core.exceptions import ValidationError
from src.python.gates.matrices import CNOT_MATRIX, X_MATRIX, ry
from src.python.sim.pauli import PauliString, PauliSum, expectation, pauli_sum
from src.python.sim.statevector import (
    GateMatrix,
    StateVector,
    apply_gate,
    bit_reverse,
    embed_operator,
    local_from_register,
    overlap,
)


class TestStateVector:
    """Test cases for StateVector construction."""

    def test_basis_state(self):
        """Test basis states put a single signed amplitude in place."""
        state = StateVector.basis(3, 5, sign=-1.0)
        assert state.n_qubits == 3
        assert len(state) == 8
        assert state.amplitudes[5] == -1.0
        assert state.norm() == pytest.approx(1.0)

    def test_basis_out_of_range(self):
        """Test out-of-range basis indices are rejected."""
        with pytest.raises(ValidationError, match="out of range"):
            StateVector.basis(2, 4)

    def test_amplitude_count_must_match(self):
        """Test the amplitude count has to be 2^n."""
        with pytest.raises(ValidationError, match="expected 4 amplitudes"):
            StateVector(2, np.zeros(3))

    def test_from_amplitudes_normalizes(self):
        """Test normalization of raw amplitudes."""
        state = StateVector.from_amplitudes([3.0, 4.0], normalize=True)
        assert state.n_qubits == 1
        np.testing.assert_allclose(state.amplitudes, [0.6, 0.8])
        np.testing.assert_allclose(state.probabilities(), [0.36, 0.64])

    def test_from_amplitudes_rejects_bad_input(self):
        """Test non-power-of-two and zero vectors."""
        with pytest.raises(ValidationError, match="power of two"):
            StateVector.from_amplitudes([1.0, 0.0, 0.0])
        with pytest.raises(ValidationError, match="zero vector"):
            StateVector.from_amplitudes([0.0, 0.0], normalize=True)

    def test_copy_is_independent(self):
        """Test copies do not share amplitude storage."""
        state = StateVector.basis(1, 0)
        clone = state.copy()
        clone.amplitudes[0] = 0.0
        assert state.amplitudes[0] == 1.0


class TestGateApplication:
    """Test cases for applying gates to registers."""

    def test_x_flips_listed_qubit(self):
        """Test register bit j is qubit j."""
        state = apply_gate(StateVector.basis(3, 0), X_MATRIX, (1,))
        assert state.amplitudes[0b010] == 1.0

    def test_first_listed_qubit_is_most_significant(self):
        """Test CNOT controls on the first listed qubit."""
        # qubit 0 set, CNOT(0 -> 1) sets qubit 1 too
        state = apply_gate(StateVector.basis(2, 0b01), CNOT_MATRIX, (0, 1))
        assert state.amplitudes[0b11] == 1.0
        # reversed wiring: qubit 1 controls, it is clear, nothing happens
        state = apply_gate(StateVector.basis(2, 0b01), CNOT_MATRIX, (1, 0))
        assert state.amplitudes[0b01] == 1.0

    def test_ry_convention(self):
        """Test RY(theta)|0> = (cos theta/2, sin theta/2)."""
        theta = 0.7
        state = apply_gate(StateVector.basis(1, 0), ry(theta), (0,))
        np.testing.assert_allclose(state.amplitudes, [np.cos(theta / 2), np.sin(theta / 2)])

    def test_gate_matrix_wrapper(self):
        """Test GateMatrix entries are accepted and checked for orthogonality."""
        gate = GateMatrix(ry(0.3))
        assert gate.arity == 1
        assert gate.is_orthogonal()
        state = apply_gate(StateVector.basis(2, 0), gate, (1,))
        assert state.norm() == pytest.approx(1.0)

    def test_arity_mismatch(self):
        """Test wrong qubit counts are rejected."""
        with pytest.raises(ValidationError):
            apply_gate(StateVector.basis(2, 0), CNOT_MATRIX, (0,))

    def test_duplicate_and_out_of_range_qubits(self):
        """Test invalid qubit lists are rejected."""
        with pytest.raises(ValidationError, match="duplicate"):
            apply_gate(StateVector.basis(2, 0), CNOT_MATRIX, (1, 1))
        with pytest.raises(ValidationError, match="out of range"):
            apply_gate(StateVector.basis(2, 0), X_MATRIX, (2,))

    def test_embed_operator_matches_apply(self):
        """Test the embedded matrix reproduces gate application."""
        rng = np.random.Generator(np.random.Philox(3))
        amplitudes = rng.standard_normal(8)
        state = StateVector(3, amplitudes / np.linalg.norm(amplitudes))
        full = embed_operator(CNOT_MATRIX, (2, 0), 3)
        np.testing.assert_allclose(full @ state.amplitudes,
                                   apply_gate(state, CNOT_MATRIX, (2, 0)).amplitudes, atol=1e-14)

    def test_overlap(self):
        """Test the real inner product and width checks."""
        a = StateVector.from_amplitudes([1.0, 1.0], normalize=True)
        b = StateVector.basis(1, 0)
        assert overlap(a, b) == pytest.approx(np.sqrt(0.5))
        with pytest.raises(ValidationError):
            overlap(a, StateVector.basis(2, 0))

    def test_bit_reverse_and_local_order(self):
        """Test the register-to-local permutation."""
        assert bit_reverse(0b0011, 4) == 0b1100
        assert bit_reverse(0b0110, 4) == 0b0110
        register = np.diag(np.arange(4.0))
        local = local_from_register(register)
        np.testing.assert_allclose(np.diag(local), [0.0, 2.0, 1.0, 3.0])


class TestPauli:
    """Test cases for Pauli strings and sums."""

    def test_label_parsing(self):
        """Test labels are sorted by qubit."""
        string = PauliString.from_label("Z3 X0")
        assert string.factors == ((0, "X"), (3, "Z"))
        assert str(string) == "X0 Z3"
        assert str(PauliString()) == "I"

    def test_identity_label_reparses(self):
        """Test printed and serialized identity terms parse back."""
        assert PauliString.from_label("I") == PauliString()
        assert PauliString.from_label(str(PauliString())) == PauliString()
        op = pauli_sum([(0.5, ""), (-0.5, "Z3")])
        serialized = op.to_json()
        assert serialized[0] == {"coefficient": 0.5, "pauli": ""}
        again = pauli_sum([(term["coefficient"], term["pauli"]) for term in serialized])
        assert again.terms == op.terms
        with pytest.raises(ValidationError, match="invalid Pauli factor"):
            PauliString.from_label("X")

    def test_invalid_factors(self):
        """Test repeated qubits and unknown letters."""
        with pytest.raises(ValidationError, match="repeated qubit"):
            PauliString(((0, "X"), (0, "Z")))
        with pytest.raises(ValidationError, match="invalid Pauli factor"):
            PauliString(((0, "W"),))

    def test_multiply_phases(self):
        """Test single-qubit product table."""
        phase, string = PauliString.from_label("X0").multiply(PauliString.from_label("Y0"))
        assert phase == 1j
        assert string == PauliString.from_label("Z0")
        phase, string = PauliString.from_label("Z0 X1").multiply(PauliString.from_label("Z0"))
        assert phase == 1
        assert string == PauliString.from_label("X1")

    def test_apply_matches_sparse(self):
        """Test mask-based application against the sparse matrix."""
        rng = np.random.Generator(np.random.Philox(11))
        amplitudes = rng.standard_normal(16)
        for label in ("X0 Z2", "Y1 Y3", "Z0 Z1 X3", "Y0 Y1 Y2 Y3"):
            string = PauliString.from_label(label)
            np.testing.assert_allclose(string.apply(amplitudes), string.to_sparse(4) @ amplitudes, atol=1e-14)

    def test_odd_y_rejected(self):
        """Test imaginary strings cannot enter real sums."""
        with pytest.raises(ValidationError, match="odd Y"):
            PauliSum([(1.0, PauliString.from_label("Y0"))])

    def test_yy_dense_matrix(self):
        """Test Y0 Y1 against the Kronecker product."""
        y = np.array([[0, -1j], [1j, 0]])
        expected = np.real(np.kron(y, y))
        np.testing.assert_allclose(pauli_sum([(1.0, "Y0 Y1")]).to_dense(2), expected)

    def test_canonical_merges_terms(self):
        """Test duplicate strings merge and cancelled terms vanish."""
        op = pauli_sum([(0.5, "Z0"), (0.5, "Z0"), (1.0, "X1"), (-1.0, "X1")])
        assert len(op) == 1
        assert op.terms[0][0] == pytest.approx(1.0)

    def test_arithmetic(self):
        """Test sum, difference and scaling."""
        a = pauli_sum([(1.0, "Z0")])
        b = PauliSum.identity(2.0)
        assert (a + b).identity_coefficient() == pytest.approx(2.0)
        assert len(a - a) == 0
        np.testing.assert_allclose(a.scaled(3.0).to_dense(1), np.diag([3.0, -3.0]))

    def test_from_complex_requires_real_result(self):
        """Test complex coefficients must cancel to reals."""
        z = PauliString.from_label("Z0")
        op = PauliSum.from_complex({z: 2.0 + 0j})
        assert op.terms == [(2.0, z)]
        with pytest.raises(ValidationError, match="not real"):
            PauliSum.from_complex({z: 1.0 + 1.0j})

    def test_expectation(self):
        """Test expectation values on basis states."""
        op = pauli_sum([(1.0, "Z0"), (0.5, "Z1")])
        assert expectation(StateVector.basis(2, 0b01), op) == pytest.approx(-0.5)
        assert op.n_qubits_required == 2
