"""
Gate kinds and gate instances.

Every gate element of the simulator is a GateKind with a fixed arity and
parameter count. Circuits are lists of GateInstance objects that bind a
kind to qubits and either to a slice of a flat parameter vector or to
fixed angles.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import GateCatalogError, ValidationError


class GateName(str, Enum):
    """Gate identifiers as used in configs and catalog dumps."""
    RY = "RY"
    H = "H"
    X = "X"
    CNOT = "CNOT"
    CZ = "CZ"
    CRY = "CRY"
    SWAP = "SWAP"
    FSWAP = "FSWAP"
    G = "G"
    QNP_OR = "QNP_OR"
    QNP_PX = "QNP_PX"
    QNP_1P = "QNP_1p"
    QNP_1H = "QNP_1h"
    QNP_A1B0 = "QNP_A1B0"
    QNP_A0B1 = "QNP_A0B1"
    QNP_A2B1 = "QNP_A2B1"
    QNP_A1B2 = "QNP_A1B2"
    QNP_PBU = "QNP_PBU"
    QNP_PBL = "QNP_PBL"
    OFSWAP = "OFSWAP"
    F = "F"
    Q = "Q"
    SO4 = "SO4"
    HAMMING_GIVENS = "HammingGivens"
    HAMMING8 = "Hamming8"


class PiGate(str, Enum):
    """Constant leading element of a Q gate."""
    IDENTITY = "identity"
    OR_PI = "OR_pi"
    OFSWAP = "OFSWAP"


@dataclass(frozen=True)
class GateKind:
    """Static description of a gate element."""
    name: GateName
    arity: int
    n_params: int
    quantum_number_preserving: bool = False
    elementary: bool = False

    @property
    def is_constant(self) -> bool:
        return self.n_params == 0


def _kind(name: GateName, arity: int, n_params: int, qnp: bool = False,
          elementary: bool = False) -> GateKind:
    return GateKind(name, arity, n_params, qnp, elementary)


GATE_KINDS: Dict[GateName, GateKind] = {
    kind.name: kind
    for kind in (
        _kind(GateName.RY, 1, 1, elementary=True),
        _kind(GateName.H, 1, 0, elementary=True),
        _kind(GateName.X, 1, 0, elementary=True),
        _kind(GateName.CNOT, 2, 0, elementary=True),
        _kind(GateName.CZ, 2, 0, elementary=True),
        _kind(GateName.CRY, 2, 1),
        _kind(GateName.SWAP, 2, 0),
        _kind(GateName.FSWAP, 2, 0),
        _kind(GateName.G, 2, 1),
        _kind(GateName.QNP_OR, 4, 1, qnp=True),
        _kind(GateName.QNP_PX, 4, 1, qnp=True),
        _kind(GateName.QNP_1P, 4, 1, qnp=True),
        _kind(GateName.QNP_1H, 4, 1, qnp=True),
        _kind(GateName.QNP_A1B0, 4, 1),
        _kind(GateName.QNP_A0B1, 4, 1),
        _kind(GateName.QNP_A2B1, 4, 1),
        _kind(GateName.QNP_A1B2, 4, 1),
        _kind(GateName.QNP_PBU, 4, 1, qnp=True),
        _kind(GateName.QNP_PBL, 4, 1, qnp=True),
        _kind(GateName.OFSWAP, 4, 0, qnp=True),
        _kind(GateName.F, 4, 5, qnp=True),
        _kind(GateName.Q, 4, 2, qnp=True),
        _kind(GateName.SO4, 2, 6),
        _kind(GateName.HAMMING_GIVENS, 2, 1),
        _kind(GateName.HAMMING8, 3, 6),
    )
}

TWO_QUBIT_ELEMENTARY = frozenset({GateName.CNOT, GateName.CZ})


def gate_kind(name) -> GateKind:
    """
    Look up a gate kind by enum member or string name.

    Raises:
        GateCatalogError: If the name is unknown
    """
    try:
        return GATE_KINDS[GateName(name)]
    except ValueError as e:
        raise GateCatalogError(f"unknown gate kind {name!r}") from e


@dataclass(frozen=True)
class GateInstance:
    """
    A gate kind bound to qubits and to its parameters.

    param_slot is the first of kind.n_params consecutive entries of the
    flat parameter vector; fixed_value holds constant angles instead.
    """
    kind: GateName
    qubits: Tuple[int, ...]
    param_slot: Optional[int] = None
    fixed_value: Optional[Tuple[float, ...]] = None
    layer: Optional[int] = None
    position: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateName(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.fixed_value is not None:
            values = np.atleast_1d(np.asarray(self.fixed_value, dtype=float))
            object.__setattr__(self, "fixed_value", tuple(float(v) for v in values))

        spec = GATE_KINDS[self.kind]
        if len(self.qubits) != spec.arity:
            raise ValidationError(
                f"{self.kind.value} acts on {spec.arity} qubits, got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValidationError(f"duplicate qubit in {self.kind.value}{self.qubits}")
        if spec.is_constant:
            if self.param_slot is not None or self.fixed_value is not None:
                raise ValidationError(f"{self.kind.value} takes no parameters")
        else:
            if (self.param_slot is None) == (self.fixed_value is None):
                raise ValidationError(
                    f"{self.kind.value} needs exactly one of param_slot / fixed_value"
                )
            if self.fixed_value is not None and len(self.fixed_value) != spec.n_params:
                raise ValidationError(
                    f"{self.kind.value} takes {spec.n_params} parameters, got {len(self.fixed_value)}"
                )
            if self.param_slot is not None and self.param_slot < 0:
                raise ValidationError("param_slot must be non-negative")

    @property
    def spec(self) -> GateKind:
        return GATE_KINDS[self.kind]

    @property
    def n_params(self) -> int:
        return self.spec.n_params

    @property
    def slots(self) -> Tuple[int, ...]:
        """Flat parameter indices bound to this gate (empty for fixed/constant gates)."""
        if self.param_slot is None:
            return ()
        return tuple(range(self.param_slot, self.param_slot + self.n_params))

    def params(self, values: Sequence[float]) -> np.ndarray:
        """Resolve this gate's parameters from a flat vector."""
        if self.fixed_value is not None:
            return np.asarray(self.fixed_value, dtype=float)
        if self.param_slot is None:
            return np.zeros(0)
        end = self.param_slot + self.n_params
        if end > len(values):
            raise ValidationError(
                f"parameter vector of length {len(values)} too short for slot {self.param_slot}"
            )
        return np.asarray(values[self.param_slot:end], dtype=float)

    def max_qubit(self) -> int:
        return max(self.qubits)

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "qubits": list(self.qubits),
            "param_slot": self.param_slot,
            "fixed_value": list(self.fixed_value) if self.fixed_value is not None else None,
            "layer": self.layer,
            "position": self.position,
        }
