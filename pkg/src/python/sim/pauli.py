"""
Pauli strings and real-weighted Pauli sums.

A string acts on a basis state through two bit masks:
P|i> = i^{n_y} (-1)^{popcount(i & z_mask)} |i ^ x_mask>, where the x mask
covers X and Y factors and the z mask covers Z and Y factors. Strings with
an even number of Y factors are real operators; only those may appear in a
PauliSum.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np
from scipy import sparse

from ..core.exceptions import ValidationError
from .statevector import StateVector


PAULI_LETTERS = ("X", "Y", "Z")

# Single-qubit products: (a, b) -> (phase, letter or None for identity)
_PRODUCT_TABLE: Dict[Tuple[str, str], Tuple[complex, Optional[str]]] = {
    ("X", "X"): (1, None), ("Y", "Y"): (1, None), ("Z", "Z"): (1, None),
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}


def parity(values: np.ndarray) -> np.ndarray:
    """Popcount parity of each non-negative integer in the array (0 or 1)."""
    v = values.astype(np.uint64, copy=True)
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return (v & np.uint64(1)).astype(np.int64)


@dataclass(frozen=True)
class PauliString:
    """Tensor product of X/Y/Z factors on distinct qubits (identity elsewhere)."""
    factors: Tuple[Tuple[int, str], ...] = ()

    def __post_init__(self):
        normalized = tuple(sorted((int(q), str(p).upper()) for q, p in self.factors))
        qubits = [q for q, _ in normalized]
        if len(set(qubits)) != len(qubits):
            raise ValidationError(f"repeated qubit in Pauli string {normalized}")
        for q, p in normalized:
            if q < 0 or p not in PAULI_LETTERS:
                raise ValidationError(f"invalid Pauli factor {p}{q}")
        object.__setattr__(self, "factors", normalized)

    @classmethod
    def from_dict(cls, factors: Mapping[int, str]) -> "PauliString":
        return cls(tuple(factors.items()))

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse labels like 'X0 Z1 X2'; '' and 'I' are the identity."""
        factors = []
        for part in label.split():
            if part == "I":
                continue
            try:
                factors.append((int(part[1:]), part[0]))
            except ValueError as e:
                raise ValidationError(f"invalid Pauli factor {part!r} in label {label!r}") from e
        return cls(tuple(factors))

    @property
    def label(self) -> str:
        return " ".join(f"{p}{q}" for q, p in self.factors)

    @property
    def y_count(self) -> int:
        return sum(1 for _, p in self.factors if p == "Y")

    @property
    def x_mask(self) -> int:
        return sum(1 << q for q, p in self.factors if p in ("X", "Y"))

    @property
    def z_mask(self) -> int:
        return sum(1 << q for q, p in self.factors if p in ("Z", "Y"))

    @property
    def max_qubit(self) -> int:
        return self.factors[-1][0] if self.factors else -1

    @property
    def is_real(self) -> bool:
        return self.y_count % 2 == 0

    def as_dict(self) -> Dict[int, str]:
        return dict(self.factors)

    def multiply(self, other: "PauliString") -> Tuple[complex, "PauliString"]:
        """Return (phase, string) with self * other = phase * string."""
        result = self.as_dict()
        phase: complex = 1
        for q, p in other.factors:
            if q not in result:
                result[q] = p
                continue
            factor, letter = _PRODUCT_TABLE[(result[q], p)]
            phase *= factor
            if letter is None:
                del result[q]
            else:
                result[q] = letter
        return phase, PauliString.from_dict(result)

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        """Apply a real (even-Y) string to a real amplitude array."""
        if not self.is_real:
            raise ValidationError(f"Pauli string {self} has odd Y count and is not real")
        indices = np.arange(amplitudes.shape[0], dtype=np.int64)
        signs = 1 - 2 * parity(indices & self.z_mask)
        if (self.y_count // 2) % 2:
            signs = -signs
        out = np.empty_like(amplitudes)
        out[indices ^ self.x_mask] = signs * amplitudes
        return out

    def to_sparse(self, n_qubits: int) -> sparse.csr_matrix:
        if not self.is_real:
            raise ValidationError(f"Pauli string {self} has odd Y count and is not real")
        if self.max_qubit >= n_qubits:
            raise ValidationError(f"Pauli string {self} exceeds {n_qubits} qubits")
        dim = 1 << n_qubits
        cols = np.arange(dim, dtype=np.int64)
        data = (1 - 2 * parity(cols & self.z_mask)).astype(float)
        if (self.y_count // 2) % 2:
            data = -data
        return sparse.csr_matrix((data, (cols ^ self.x_mask, cols)), shape=(dim, dim))

    def __str__(self) -> str:
        return self.label or "I"


@dataclass
class PauliSum:
    """Real-weighted sum of even-Y Pauli strings (a real symmetric operator)."""
    terms: List[Tuple[float, PauliString]] = field(default_factory=list)

    def __post_init__(self):
        self.terms = [(float(c), s) for c, s in self.terms]
        self.validate()

    @classmethod
    def identity(cls, coefficient: float = 1.0) -> "PauliSum":
        return cls([(coefficient, PauliString())])

    @classmethod
    def from_complex(cls, terms: Mapping[PauliString, complex], tol: float = 1e-12) -> "PauliSum":
        """
        Build from complex coefficients, which must be real after cancellation.

        Raises:
            ValidationError: If any merged coefficient keeps an imaginary part
        """
        real_terms = []
        for string, coefficient in terms.items():
            if abs(coefficient.imag) > tol:
                raise ValidationError(f"operator is not real: term {string} has coefficient {coefficient}")
            if abs(coefficient.real) > tol:
                real_terms.append((coefficient.real, string))
        return cls(real_terms).canonical(tol)

    def validate(self) -> None:
        for coefficient, string in self.terms:
            if not string.is_real:
                raise ValidationError(f"term {string} has odd Y count; PauliSum must be real")
            if not np.isfinite(coefficient):
                raise ValidationError(f"non-finite coefficient on {string}")

    def canonical(self, tol: float = 1e-12) -> "PauliSum":
        """Merge duplicate strings, drop near-zero terms, sort deterministically."""
        merged: Dict[PauliString, float] = defaultdict(float)
        for coefficient, string in self.terms:
            merged[string] += coefficient
        terms = [(c, s) for s, c in merged.items() if abs(c) > tol]
        terms.sort(key=lambda term: (len(term[1].factors), term[1].factors))
        return PauliSum(terms)

    @property
    def n_qubits_required(self) -> int:
        return max((s.max_qubit for _, s in self.terms), default=-1) + 1

    def identity_coefficient(self) -> float:
        return sum(c for c, s in self.terms if not s.factors)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        return PauliSum(self.terms + other.terms).canonical()

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other.scaled(-1.0)

    def scaled(self, factor: float) -> "PauliSum":
        return PauliSum([(factor * c, s) for c, s in self.terms])

    def __len__(self) -> int:
        return len(self.terms)

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        out = np.zeros_like(amplitudes)
        for coefficient, string in self.terms:
            out += coefficient * string.apply(amplitudes)
        return out

    def to_sparse(self, n_qubits: int) -> sparse.csr_matrix:
        dim = 1 << n_qubits
        matrix = sparse.csr_matrix((dim, dim))
        for coefficient, string in self.terms:
            matrix = matrix + coefficient * string.to_sparse(n_qubits)
        return matrix.tocsr()

    def to_dense(self, n_qubits: int) -> np.ndarray:
        return self.to_sparse(n_qubits).toarray()

    def to_json(self) -> List[Dict[str, object]]:
        return [{"coefficient": c, "pauli": s.label} for c, s in self.terms]

    def __str__(self) -> str:
        return " + ".join(f"{c:.6g}*{s}" for c, s in self.terms) or "0"


def pauli_sum(terms: Iterable[Tuple[float, str]]) -> PauliSum:
    """Convenience constructor from (coefficient, label) pairs."""
    return PauliSum([(c, PauliString.from_label(label)) for c, label in terms]).canonical()


def expectation(state: StateVector, op: PauliSum) -> float:
    """
    Expectation value <psi|O|psi> of a real Pauli sum.

    Raises:
        ValidationError: If a term has odd Y count or exceeds the register
    """
    if op.n_qubits_required > state.n_qubits:
        raise ValidationError(
            f"operator needs {op.n_qubits_required} qubits, state has {state.n_qubits}"
        )
    psi = state.amplitudes
    total = 0.0
    for coefficient, string in op.terms:
        total += coefficient * float(np.dot(psi, string.apply(psi)))
    return total
