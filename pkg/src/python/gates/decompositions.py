"""
Elementary-gate decompositions of the gate catalog.

Each Decomposition is a time-ordered list of steps over the target's local
wires. A step angle is linear in the target parameter:
angle = scale * theta + offset. Steps may reference other catalogued kinds;
full expansion recurses until only elementary gates (RY, H, X, CNOT, CZ)
remain.

Wire names for 4-qubit gates: a = 0alpha, b = 0beta, c = 1alpha, d = 1beta.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import GateCatalogError
from ..sim.statevector import embed_operator, local_from_register
from .catalog import GATE_KINDS, GateName, gate_kind
from .matrices import gate_matrix

logger = logging.getLogger(__name__)

A, B, C, D = 0, 1, 2, 3
TOP, BOTTOM = 0, 1
PI_8 = np.pi / 8


@dataclass(frozen=True)
class Step:
    """One gate of a decomposition, on local wires of the target."""
    kind: GateName
    wires: Tuple[int, ...]
    scale: float = 0.0
    offset: float = 0.0

    def angle(self, theta: float) -> float:
        return self.scale * theta + self.offset

    @property
    def parametrized(self) -> bool:
        return GATE_KINDS[self.kind].n_params > 0

    @property
    def formula(self) -> str:
        """Human readable angle, e.g. '-θ/8' or 'π/8'."""
        if not self.parametrized:
            return ""
        parts = []
        if self.scale:
            frac = Fraction(self.scale).limit_denominator(64)
            sign = "-" if frac < 0 else ""
            num, den = abs(frac.numerator), frac.denominator
            text = "θ" if num == 1 else f"{num}θ"
            parts.append(f"{sign}{text}" + (f"/{den}" if den != 1 else ""))
        if self.offset:
            frac = Fraction(self.offset / np.pi).limit_denominator(64)
            sign = "-" if frac < 0 else ("+" if parts else "")
            num, den = abs(frac.numerator), frac.denominator
            text = "π" if num == 1 else f"{num}π"
            parts.append(f"{sign}{text}" + (f"/{den}" if den != 1 else ""))
        return "".join(parts) or "0"

    def to_dict(self) -> Dict[str, object]:
        return {"kind": self.kind.value, "wires": list(self.wires), "angle": self.formula}


def schedule_depth(wire_sets: Sequence[Sequence[int]]) -> int:
    """Greedy ASAP layering: each gate takes the first layer where all its wires are free."""
    level: Dict[int, int] = {}
    depth = 0
    for wires in wire_sets:
        layer = max((level.get(w, 0) for w in wires), default=0) + 1
        for w in wires:
            level[w] = layer
        depth = max(depth, layer)
    return depth


@dataclass
class Decomposition:
    """A named circuit variant that reproduces a catalogued gate."""
    target: GateName
    variant: str
    steps: List[Step] = field(default_factory=list)
    description: str = ""

    @property
    def two_qubit_count(self) -> int:
        return sum(1 for step in self.steps if len(step.wires) == 2)

    @property
    def depth(self) -> int:
        return schedule_depth([step.wires for step in self.steps])

    def matrix(self, params: Sequence[float] = ()) -> np.ndarray:
        """Local matrix obtained by multiplying out the steps."""
        arity = GATE_KINDS[self.target].arity
        theta = float(params[0]) if len(params) else 0.0
        register = np.eye(1 << arity)
        for step in self.steps:
            angles = [step.angle(theta)] if step.parametrized else []
            register = embed_operator(gate_matrix(step.kind, angles), step.wires, arity) @ register
        return local_from_register(register)

    def to_dict(self) -> Dict[str, object]:
        return {
            "target": self.target.value,
            "variant": self.variant,
            "description": self.description,
            "two_qubit_count": self.two_qubit_count,
            "depth": self.depth,
            "steps": [step.to_dict() for step in self.steps],
        }


# Step builders

def _ry(wire: int, scale: float = 0.0, offset: float = 0.0) -> Step:
    return Step(GateName.RY, (wire,), scale, offset)


def _cry(control: int, target: int, scale: float = 0.0, offset: float = 0.0) -> Step:
    return Step(GateName.CRY, (control, target), scale, offset)


def _cnot(control: int, target: int) -> Step:
    return Step(GateName.CNOT, (control, target))


def _cz(x: int, y: int) -> Step:
    return Step(GateName.CZ, (x, y))


def _h(wire: int) -> Step:
    return Step(GateName.H, (wire,))


def _x(wire: int) -> Step:
    return Step(GateName.X, (wire,))


def _swap(x: int, y: int) -> Step:
    return Step(GateName.SWAP, (x, y))


def _whole(kind: GateName, wires: Tuple[int, ...] = (A, B, C, D)) -> Step:
    return Step(kind, wires, scale=1.0)


def _negated(steps: Sequence[Step]) -> List[Step]:
    return [Step(s.kind, s.wires, -s.scale, -s.offset) for s in steps]


# Pair-breaking kernel shared by the PBL and PBU circuits
_PAIR_BREAK_KERNEL = [
    _cry(A, C, offset=PI_8), _cnot(A, B), _cry(B, C, offset=PI_8), _cnot(A, B),
    _cry(B, C, offset=-PI_8), _cz(D, C), _cry(A, C, offset=-PI_8), _cnot(A, B),
    _cry(B, C, offset=-PI_8), _cnot(A, B), _cry(B, C, offset=PI_8), _cz(D, C),
]
_PAIR_BREAK_KERNEL_INVERSE = _negated(_PAIR_BREAK_KERNEL)
_PAIR_BREAK_PREFIX = [_cnot(D, A), _cnot(C, B), _x(A), _cnot(C, D)]


def _build_catalog() -> Dict[GateName, Dict[str, Decomposition]]:
    r, rd = 1.0 / 8, -1.0 / 8
    q, qd = 1.0 / 4, -1.0 / 4
    catalog: Dict[GateName, Dict[str, Decomposition]] = {}

    def add(target: GateName, variant: str, steps: List[Step], description: str = "") -> None:
        catalog.setdefault(target, {})[variant] = Decomposition(target, variant, steps, description)

    # Elementary expansions
    add(GateName.CRY, "cnot", [
        _ry(BOTTOM, 0.5), _cnot(TOP, BOTTOM), _ry(BOTTOM, -0.5), _cnot(TOP, BOTTOM),
    ], "controlled RY from two CNOTs and two half-angle RY")
    add(GateName.SWAP, "cnot3", [_cnot(TOP, BOTTOM), _cnot(BOTTOM, TOP), _cnot(TOP, BOTTOM)])
    add(GateName.FSWAP, "swap_cz", [_swap(TOP, BOTTOM), _cz(TOP, BOTTOM)],
        "fermionic swap: SWAP followed by CZ")
    add(GateName.HAMMING_GIVENS, "givens", [_whole(GateName.G, (TOP, BOTTOM))])

    # Givens rotation, three equivalent circuits
    add(GateName.G, "cz_ry", [
        _h(TOP), _h(BOTTOM), _cz(TOP, BOTTOM), _ry(TOP, 0.5), _ry(BOTTOM, -0.5),
        _cz(TOP, BOTTOM), _h(TOP), _h(BOTTOM),
    ], "Hadamard-conjugated CZ sandwich")
    add(GateName.G, "cry", [_cnot(BOTTOM, TOP), _cry(TOP, BOTTOM, 1.0), _cnot(BOTTOM, TOP)],
        "CNOT-conjugated controlled RY")
    add(GateName.G, "cnot_ry", [
        _cnot(BOTTOM, TOP), _ry(BOTTOM, 0.5), _cnot(TOP, BOTTOM), _ry(BOTTOM, -0.5),
        _cnot(TOP, BOTTOM), _cnot(BOTTOM, TOP),
    ], "controlled RY expanded into CNOTs")

    # Spin-adapted orbital rotation
    add(GateName.QNP_OR, "cnot4", [
        _h(A), _h(B), _cnot(A, C), _cnot(B, D),
        _ry(A, 0.5), _ry(C, 0.5), _ry(B, 0.5), _ry(D, 0.5),
        _cnot(A, C), _h(A), _cnot(B, D), _h(B),
    ], "depth 5 with four CNOTs")
    add(GateName.QNP_OR, "cry", [
        _cnot(C, A), _cry(A, C, 1.0), _cnot(C, A),
        _cnot(D, B), _cry(B, D, 1.0), _cnot(D, B),
    ], "one controlled-RY Givens per spin")
    add(GateName.QNP_OR, "cnot8", [
        _cnot(C, A), _cnot(D, B), _ry(C, 0.5), _ry(D, 0.5),
        _cnot(A, C), _cnot(B, D), _ry(C, -0.5), _ry(D, -0.5),
        _cnot(A, C), _cnot(C, A), _cnot(B, D), _cnot(D, B),
    ], "CNOT-only Givens per spin")

    # Diagonal pair exchange
    add(GateName.QNP_PX, "cry", [
        _cnot(B, A), _cnot(D, C), _x(A), _cnot(D, B),
        _cry(A, D, q), _cnot(A, C), _cry(C, D, q), _cnot(A, C), _cry(C, D, qd),
        _cz(B, D), _cry(A, D, qd), _cnot(A, C), _cry(C, D, qd), _cnot(A, C),
        _x(A), _cry(C, D, q), _cz(B, D),
        _cnot(D, B), _cnot(D, C), _cnot(B, A),
    ], "controlled-RY circuit")
    add(GateName.QNP_PX, "standard", [
        _cnot(B, A), _cnot(D, B), _cz(A, B), _h(D), _cnot(D, C),
        _ry(D, rd), _ry(C, r), _cz(A, D), _cnot(A, C), _ry(D, rd), _ry(C, r),
        _cnot(B, C), _cnot(B, D), _ry(D, r), _ry(C, rd), _cnot(A, C), _cz(A, D),
        _ry(C, rd), _ry(D, r), _cnot(D, C), _cnot(B, D), _h(D), _cnot(D, B), _cnot(B, A),
    ], "standard gates only")

    # Single excitations conditioned on the spectator spin
    add(GateName.QNP_A1B0, "standard", [
        _cnot(C, A), _ry(C, r), _cnot(D, C), _ry(C, r), _cnot(B, C), _ry(C, r),
        _cz(B, A), _cnot(D, C), _ry(C, r), _cz(A, C), _ry(C, rd), _cnot(D, C),
        _ry(C, rd), _cnot(B, C), _ry(C, rd), _cnot(D, C), _ry(C, rd), _cz(A, C),
        _cnot(C, A),
    ])
    add(GateName.QNP_A0B1, "standard", [
        _cnot(D, B), _ry(D, r), _cnot(C, D), _ry(D, r), _cnot(A, D), _ry(D, r),
        _cz(A, B), _cnot(C, D), _ry(D, r), _cz(B, D), _ry(D, rd), _cnot(C, D),
        _ry(D, rd), _cnot(A, D), _ry(D, rd), _cnot(C, D), _ry(D, rd), _cz(B, D),
        _cnot(D, B),
    ])
    add(GateName.QNP_A2B1, "standard", [
        _cnot(D, B), _ry(D, r), _cnot(C, D), _ry(D, rd), _cnot(A, D), _ry(D, r),
        _cnot(C, D), _ry(D, rd), _cz(B, D), _cz(A, B), _ry(D, r), _cnot(C, D),
        _ry(D, rd), _cnot(A, D), _ry(D, r), _cnot(C, D), _ry(D, rd), _cz(B, D),
        _cnot(D, B),
    ])
    add(GateName.QNP_A1B2, "standard", [
        _cnot(C, A), _ry(C, r), _cnot(D, C), _ry(C, rd), _cnot(B, C), _ry(C, r),
        _cnot(D, C), _ry(C, rd), _cz(A, C), _cz(B, A), _ry(C, r), _cnot(D, C),
        _ry(C, rd), _cnot(B, C), _ry(C, r), _cnot(D, C), _ry(C, rd), _cz(A, C),
        _cnot(C, A),
    ])
    add(GateName.QNP_1P, "a_type", [_whole(GateName.QNP_A1B0), _whole(GateName.QNP_A0B1)],
        "product of the alpha and beta one-particle excitations")
    add(GateName.QNP_1H, "a_type", [_whole(GateName.QNP_A1B2), _whole(GateName.QNP_A2B1)],
        "product of the alpha and beta one-hole excitations")

    # Pair breaking between the closed-shell determinant and the open-shell singlet
    add(GateName.QNP_PBL, "cry", [
        *_PAIR_BREAK_PREFIX,
        *_PAIR_BREAK_KERNEL,
        _cnot(C, D), _cnot(C, A), _x(A), _cnot(B, C),
        _cry(A, B, q), _cnot(A, D), _cry(D, B, q), _cnot(A, D), _cry(D, B, qd),
        _cz(C, B), _cry(A, B, qd), _cnot(A, D), _cry(D, B, qd), _cnot(A, D), _cry(D, B, q),
        _x(A), _cz(C, B), _cnot(B, C), _cnot(C, A), _cnot(C, D),
        *_PAIR_BREAK_KERNEL_INVERSE,
        _x(A), _cnot(C, D), _cnot(C, B), _cnot(D, A),
    ], "lower (#3) pair breaking")
    add(GateName.QNP_PBU, "cry", [
        *_PAIR_BREAK_PREFIX,
        *_PAIR_BREAK_KERNEL,
        _cnot(C, D), _cnot(D, A), _cnot(D, B),
        _cry(A, D, q), _cnot(A, C), _cry(C, D, qd), _cnot(A, C), _cry(C, D, q),
        _cz(B, D), _cry(A, D, q), _cnot(A, C), _cry(C, D, qd), _cnot(A, C), _cry(C, D, q),
        _cz(B, D),
        _cnot(D, B), _cnot(D, A), _cnot(C, D),
        *_PAIR_BREAK_KERNEL_INVERSE,
        _cnot(C, D), _cnot(C, B), _cnot(D, A), _x(A),
    ], "upper (#12) pair breaking")

    # Orbital-wise fermionic swap
    add(GateName.OFSWAP, "swap_cz", [_swap(A, C), _cz(A, C), _swap(B, D), _cz(B, D)],
        "fermionic swap of the alpha pair and of the beta pair")

    return catalog


DECOMPOSITIONS: Dict[GateName, Dict[str, Decomposition]] = _build_catalog()

PRIMARY_VARIANT: Dict[GateName, str] = {
    GateName.CRY: "cnot",
    GateName.SWAP: "cnot3",
    GateName.FSWAP: "swap_cz",
    GateName.HAMMING_GIVENS: "givens",
    GateName.G: "cz_ry",
    GateName.QNP_OR: "cnot4",
    GateName.QNP_PX: "standard",
    GateName.QNP_A1B0: "standard",
    GateName.QNP_A0B1: "standard",
    GateName.QNP_A2B1: "standard",
    GateName.QNP_A1B2: "standard",
    GateName.QNP_1P: "a_type",
    GateName.QNP_1H: "a_type",
    GateName.QNP_PBL: "cry",
    GateName.QNP_PBU: "cry",
    GateName.OFSWAP: "swap_cz",
}


def has_decomposition(kind) -> bool:
    return gate_kind(kind).name in DECOMPOSITIONS


def decomposition(kind, variant: Optional[str] = None) -> Decomposition:
    """
    Catalogued decomposition of a gate kind.

    Args:
        kind: Gate kind
        variant: Variant name; the primary variant when omitted

    Raises:
        GateCatalogError: If no decomposition (or no such variant) is catalogued
    """
    name = gate_kind(kind).name
    variants = DECOMPOSITIONS.get(name)
    if not variants:
        raise GateCatalogError(f"no decomposition catalogued for {name.value}")
    key = variant or PRIMARY_VARIANT[name]
    if key not in variants:
        raise GateCatalogError(
            f"{name.value} has no variant {key!r}; available: {sorted(variants)}"
        )
    return variants[key]


def decomposition_variants(kind) -> List[Decomposition]:
    """All catalogued variants of a kind (empty for elementary or opaque kinds)."""
    return list(DECOMPOSITIONS.get(gate_kind(kind).name, {}).values())


def equivalence_residual(kind, variant: Optional[str] = None, params: Sequence[float] = ()) -> float:
    """Max-abs difference between a decomposition's matrix and the reference matrix."""
    decomp = decomposition(kind, variant)
    return float(np.max(np.abs(decomp.matrix(params) - gate_matrix(decomp.target, params))))
