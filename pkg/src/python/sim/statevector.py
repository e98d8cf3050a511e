"""
Real-amplitude statevector and dense gate application.

Basis index bit k is the occupation of qubit k (qubit 0 is the least
significant bit). Gate matrices use a big-endian local index: the first
listed qubit is the most significant bit of the gate's row/column index,
matching the top wire of a circuit diagram.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from ..core.exceptions import ValidationError


MAX_GATE_ARITY = 4


@dataclass
class GateMatrix:
    """A real orthogonal 2^k x 2^k gate matrix."""
    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        rows, cols = self.entries.shape
        if rows != cols or rows & (rows - 1) or rows < 2:
            raise ValidationError(f"gate matrix must be 2^k square, got {self.entries.shape}")

    @property
    def arity(self) -> int:
        return int(self.entries.shape[0]).bit_length() - 1

    def is_orthogonal(self, tol: float = 1e-12) -> bool:
        dim = self.entries.shape[0]
        return bool(np.max(np.abs(self.entries.T @ self.entries - np.eye(dim))) < tol)


@dataclass
class StateVector:
    """Real amplitudes over the 2^n_qubits computational basis states."""
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=float).reshape(-1)
        if self.n_qubits < 0:
            raise ValidationError("n_qubits must be non-negative")
        if self.amplitudes.shape[0] != 1 << self.n_qubits:
            raise ValidationError(
                f"expected {1 << self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got {self.amplitudes.shape[0]}"
            )

    @classmethod
    def basis(cls, n_qubits: int, index: int, sign: float = 1.0) -> "StateVector":
        """Computational basis state |index>."""
        if not 0 <= index < 1 << n_qubits:
            raise ValidationError(f"basis index {index} out of range for {n_qubits} qubits")
        amplitudes = np.zeros(1 << n_qubits)
        amplitudes[index] = sign
        return cls(n_qubits, amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[float], normalize: bool = False) -> "StateVector":
        values = np.asarray(list(amplitudes), dtype=float)
        n_qubits = int(values.shape[0]).bit_length() - 1
        if values.shape[0] != 1 << n_qubits:
            raise ValidationError(f"amplitude count {values.shape[0]} is not a power of two")
        if normalize:
            norm = np.linalg.norm(values)
            if norm == 0:
                raise ValidationError("cannot normalize the zero vector")
            values = values / norm
        return cls(n_qubits, values)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        return self.amplitudes ** 2

    def __len__(self) -> int:
        return self.amplitudes.shape[0]


def check_qubits(qubits: Sequence[int], n_qubits: int) -> None:
    """Raise if qubit indices are duplicated or out of range."""
    if len(set(qubits)) != len(qubits):
        raise ValidationError(f"duplicate qubit index in {tuple(qubits)}")
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise ValidationError(f"qubit index {q} out of range for {n_qubits} qubits")


def apply_matrix(amplitudes: np.ndarray, n_qubits: int, matrix: np.ndarray,
                 qubits: Sequence[int]) -> np.ndarray:
    """
    Apply a dense 2^k x 2^k matrix to raw amplitudes.

    The amplitude array is viewed as an n-dimensional (2, ..., 2) tensor in
    which qubit q is axis n-1-q; the gate axes are moved to the front in
    listed order, so the first listed qubit becomes the most significant bit
    of the local index.

    Returns:
        A new amplitude array; the input is left untouched
    """
    k = len(qubits)
    tensor = amplitudes.reshape((2,) * n_qubits)
    axes = [n_qubits - 1 - q for q in qubits]
    front = list(range(k))
    moved = np.moveaxis(tensor, axes, front)
    shape = moved.shape
    result = (matrix @ moved.reshape(1 << k, -1)).reshape(shape)
    return np.ascontiguousarray(np.moveaxis(result, front, axes)).reshape(-1)


def apply_gate(state: StateVector, gate: Union[GateMatrix, np.ndarray],
               qubits: Sequence[int]) -> StateVector:
    """
    Apply a gate to the listed qubits, identity elsewhere.

    Args:
        state: Input state
        gate: Gate matrix (first listed qubit = most significant local bit)
        qubits: Ordered target qubits

    Returns:
        New state U|psi>

    Raises:
        ValidationError: On arity mismatch or invalid qubit indices
    """
    matrix = gate.entries if isinstance(gate, GateMatrix) else np.asarray(gate, dtype=float)
    arity = int(matrix.shape[0]).bit_length() - 1
    qubits = tuple(int(q) for q in qubits)
    if matrix.shape != (1 << arity, 1 << arity) or arity != len(qubits):
        raise ValidationError(
            f"gate of shape {matrix.shape} does not match {len(qubits)} target qubits"
        )
    if arity > MAX_GATE_ARITY:
        raise ValidationError(f"gates wider than {MAX_GATE_ARITY} qubits are not supported")
    check_qubits(qubits, state.n_qubits)
    return StateVector(state.n_qubits, apply_matrix(state.amplitudes, state.n_qubits, matrix, qubits))


def embed_operator(matrix: np.ndarray, qubits: Sequence[int], n_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n matrix of a gate acting on the listed qubits."""
    dim = 1 << n_qubits
    identity = np.eye(dim)
    columns = [apply_matrix(identity[:, j], n_qubits, matrix, qubits) for j in range(dim)]
    return np.stack(columns, axis=1)


def overlap(a: StateVector, b: StateVector) -> float:
    """Real inner product <a|b>."""
    if a.n_qubits != b.n_qubits:
        raise ValidationError(f"overlap of {a.n_qubits}- and {b.n_qubits}-qubit states")
    return float(np.dot(a.amplitudes, b.amplitudes))


def bit_reverse(index: int, width: int) -> int:
    """Reverse the lowest `width` bits of index."""
    result = 0
    for _ in range(width):
        result = (result << 1) | (index & 1)
        index >>= 1
    return result


def local_from_register(operator: np.ndarray) -> np.ndarray:
    """
    Convert a k-qubit register operator (index bit j = wire j) to the
    big-endian local convention (wire 0 = most significant bit).
    """
    width = int(operator.shape[0]).bit_length() - 1
    perm = [bit_reverse(i, width) for i in range(operator.shape[0])]
    return operator[np.ix_(perm, perm)]


def register_from_local(matrix: np.ndarray) -> np.ndarray:
    """Inverse of local_from_register (bit reversal is an involution)."""
    return local_from_register(matrix)
