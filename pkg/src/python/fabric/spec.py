"""
Fabric specifications and flat parameter vectors.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from ..core.exceptions import ConfigurationError, ValidationError
from ..gates.catalog import GateName, PiGate


class FabricKind(str, Enum):
    """Gate fabric families."""
    Q = "Q"
    F = "F"
    F_PRIME = "F_prime"
    F_DOUBLE_PRIME = "F_double_prime"
    OR_ONLY = "OR_only"
    PX_ONLY = "PX_only"
    SO4 = "SO4"
    HAMMING_GIVENS = "HammingGivens"
    HAMMING8 = "Hamming8"


class Strategy(str, Enum):
    """Parameter initialization strategies for fermionic fabrics."""
    A = "A"
    B = "B"


# Per-element gate kinds, in time order, of the fabrics built from
# parametrized 4-qubit gates on spatial-orbital pairs
ELEMENT_GATES: Dict[FabricKind, Tuple[GateName, ...]] = {
    FabricKind.F: (GateName.F,),
    FabricKind.F_PRIME: (GateName.QNP_1P, GateName.QNP_1H, GateName.QNP_PX, GateName.QNP_PBU),
    FabricKind.F_DOUBLE_PRIME: (GateName.QNP_1P, GateName.QNP_PX, GateName.QNP_PBU),
    FabricKind.OR_ONLY: (GateName.QNP_OR,),
    FabricKind.PX_ONLY: (GateName.QNP_PX,),
}

FERMIONIC_KINDS = frozenset({
    FabricKind.Q, FabricKind.F, FabricKind.F_PRIME, FabricKind.F_DOUBLE_PRIME,
    FabricKind.OR_ONLY, FabricKind.PX_ONLY,
})
F_TYPE_KINDS = frozenset({FabricKind.F, FabricKind.F_PRIME, FabricKind.F_DOUBLE_PRIME})

# Q gate elements: constant Pi, then the theta (PX) and phi (OR) rotations
Q_ELEMENTS = ("PI", "PX", "OR")
DEFAULT_GATE_ORDER = ("PI", "PX", "OR")


@dataclass(frozen=True)
class FabricSpec:
    """
    Layered tessellation of one gate family.

    M is the spatial orbital count for fermionic kinds (2M qubits) and the
    qubit count for SO4 and the Hamming-weight kinds.
    """
    kind: FabricKind
    M: int
    n_layers: int
    pi_gate: PiGate = PiGate.IDENTITY
    gate_order: Tuple[str, ...] = DEFAULT_GATE_ORDER

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", FabricKind(self.kind))
            object.__setattr__(self, "pi_gate", PiGate(self.pi_gate))
        except ValueError as e:
            raise ValidationError(str(e)) from e
        object.__setattr__(self, "gate_order", tuple(str(e).upper() for e in self.gate_order))
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ValidationError: On invalid sizes, layer counts or gate orders
        """
        if self.n_layers < 1:
            raise ValidationError(f"n_layers must be at least 1, got {self.n_layers}")
        if self.is_fermionic and self.M < 2:
            raise ValidationError(f"{self.kind.value} fabric needs M >= 2 spatial orbitals, got {self.M}")
        if self.kind is FabricKind.HAMMING8 and self.M < 3:
            raise ValidationError(f"Hamming8 fabric needs at least 3 qubits, got {self.M}")
        if self.kind in (FabricKind.SO4, FabricKind.HAMMING_GIVENS) and self.M < 2:
            raise ValidationError(f"{self.kind.value} fabric needs at least 2 qubits, got {self.M}")
        if sorted(self.gate_order) != sorted(Q_ELEMENTS):
            raise ValidationError(f"gate_order must be a permutation of {Q_ELEMENTS}, got {self.gate_order}")

    @property
    def is_fermionic(self) -> bool:
        return self.kind in FERMIONIC_KINDS

    @property
    def n_qubits(self) -> int:
        return 2 * self.M if self.is_fermionic else self.M

    def with_pi_gate(self, pi_gate: PiGate) -> "FabricSpec":
        return replace(self, pi_gate=PiGate(pi_gate))

    def with_layers(self, n_layers: int) -> "FabricSpec":
        return replace(self, n_layers=n_layers)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FabricSpec":
        """
        Build from a config mapping with keys kind, M, n_layers and
        optionally pi_gate and gate_order.

        Raises:
            ConfigurationError: On unknown or missing keys
        """
        allowed = {"kind", "M", "n_layers", "pi_gate", "gate_order"}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigurationError(f"unknown fabric keys: {sorted(unknown)}")
        missing = {"kind", "M", "n_layers"} - set(data)
        if missing:
            raise ConfigurationError(f"missing fabric keys: {sorted(missing)}")
        return cls(
            kind=data["kind"],
            M=int(data["M"]),
            n_layers=int(data["n_layers"]),
            pi_gate=data.get("pi_gate", PiGate.IDENTITY),
            gate_order=tuple(data.get("gate_order", DEFAULT_GATE_ORDER)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "M": self.M,
            "n_layers": self.n_layers,
            "pi_gate": self.pi_gate.value,
            "gate_order": list(self.gate_order),
        }


LayoutKey = Tuple[int, int, int]  # (layer, position within layer, local slot)


@dataclass
class ParamVector:
    """Flat fabric parameters with the (layer, position, slot) -> index map."""
    values: np.ndarray
    layout: Dict[LayoutKey, int] = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        if self.layout and len(self.layout) != self.values.shape[0]:
            raise ValidationError(
                f"layout addresses {len(self.layout)} slots, vector has {self.values.shape[0]}"
            )

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __iter__(self) -> Iterator[float]:
        return iter(self.values.tolist())

    def __getitem__(self, key: LayoutKey) -> float:
        return float(self.values[self.layout[key]])

    def with_values(self, values: np.ndarray) -> "ParamVector":
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.shape[0] != len(self):
            raise ValidationError(f"expected {len(self)} parameters, got {values.shape[0]}")
        return ParamVector(values, dict(self.layout))

    def copy(self) -> "ParamVector":
        return self.with_values(self.values.copy())

    def rows(self) -> List[Dict[str, Any]]:
        """One record per slot, ordered by flat index."""
        by_index = {index: key for key, index in self.layout.items()}
        records = []
        for index, value in enumerate(self.values):
            layer, position, slot = by_index.get(index, (None, None, None))
            records.append({"index": index, "layer": layer, "position": position,
                            "slot": slot, "value": float(value)})
        return records


def ensure_values(params: Optional[object], expected: int) -> np.ndarray:
    """Flat float array from a ParamVector or sequence, length-checked."""
    if isinstance(params, ParamVector):
        values = params.values
    else:
        values = np.asarray(params if params is not None else [], dtype=float).reshape(-1)
    if values.shape[0] != expected:
        raise ValidationError(f"expected {expected} parameters, got {values.shape[0]}")
    return values
