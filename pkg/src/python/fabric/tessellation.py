"""
Expansion of fabric specifications into gate lists.

Fermionic fabrics place one element per spatial-orbital pair (p, p+1) on
qubits (2p, 2p+1, 2p+2, 2p+3), with pairs starting at orbital 0 on even
layers and orbital 1 on odd layers. SO4 and HammingGivens fabrics use the
same brick pattern on qubit pairs; Hamming8 cascades qubit triples with
offsets 0, 1, 2.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np

from ..core.exceptions import ValidationError
from ..gates.catalog import GATE_KINDS, GateInstance, GateName, PiGate
from .spec import ELEMENT_GATES, FabricKind, FabricSpec, LayoutKey, ParamVector

logger = logging.getLogger(__name__)

_BRICK_GATES = {
    FabricKind.SO4: GateName.SO4,
    FabricKind.HAMMING_GIVENS: GateName.HAMMING_GIVENS,
    FabricKind.HAMMING8: GateName.HAMMING8,
}


def element_sites(spec: FabricSpec, layer: int) -> List[Tuple[int, ...]]:
    """Qubit tuples of the fabric elements in one layer."""
    if spec.is_fermionic:
        return [(2 * p, 2 * p + 1, 2 * p + 2, 2 * p + 3) for p in range(layer % 2, spec.M - 1, 2)]
    if spec.kind is FabricKind.HAMMING8:
        return [(q, q + 1, q + 2) for q in range(layer % 3, spec.M - 2, 3)]
    return [(q, q + 1) for q in range(layer % 2, spec.M - 1, 2)]


def _pi_instances(pi_gate: PiGate, qubits: Tuple[int, ...], layer: int, position: int) -> List[GateInstance]:
    if pi_gate is PiGate.OR_PI:
        return [GateInstance(GateName.QNP_OR, qubits, fixed_value=(np.pi,), layer=layer, position=position)]
    if pi_gate is PiGate.OFSWAP:
        return [GateInstance(GateName.OFSWAP, qubits, layer=layer, position=position)]
    return []


def _element(spec: FabricSpec, qubits: Tuple[int, ...], slot: int, layer: int,
             position: int) -> Tuple[List[GateInstance], int]:
    """Gates of one fabric element and the number of slots it consumes."""
    if spec.kind is FabricKind.Q:
        gates: List[GateInstance] = []
        for element in spec.gate_order:
            if element == "PI":
                gates.extend(_pi_instances(spec.pi_gate, qubits, layer, position))
            elif element == "PX":
                gates.append(GateInstance(GateName.QNP_PX, qubits, param_slot=slot,
                                          layer=layer, position=position))
            else:
                gates.append(GateInstance(GateName.QNP_OR, qubits, param_slot=slot + 1,
                                          layer=layer, position=position))
        return gates, 2

    kinds = ELEMENT_GATES.get(spec.kind, (_BRICK_GATES.get(spec.kind),))
    gates = []
    used = 0
    for kind in kinds:
        gates.append(GateInstance(kind, qubits, param_slot=slot + used, layer=layer, position=position))
        used += GATE_KINDS[kind].n_params
    return gates, used


def expand_with_layout(spec: FabricSpec) -> Tuple[List[GateInstance], Dict[LayoutKey, int]]:
    """
    Gate list in time order plus the (layer, position, local slot) -> flat index map.

    Raises:
        ValidationError: If the fabric places no parametrized gate
    """
    gates: List[GateInstance] = []
    layout: Dict[LayoutKey, int] = {}
    slot = 0
    for layer in range(spec.n_layers):
        for position, qubits in enumerate(element_sites(spec, layer)):
            element_gates, used = _element(spec, qubits, slot, layer, position)
            gates.extend(element_gates)
            for local in range(used):
                layout[(layer, position, local)] = slot + local
            slot += used
    if slot == 0:
        raise ValidationError(f"fabric {spec.to_dict()} places no parametrized gates")
    logger.debug(f"Expanded {spec.kind.value} fabric: {len(gates)} gates, {slot} parameters")
    return gates, layout


def expand(spec: FabricSpec) -> List[GateInstance]:
    """Deterministic gate list of a fabric."""
    return expand_with_layout(spec)[0]


def parameter_count(spec: FabricSpec) -> int:
    return len(expand_with_layout(spec)[1])


def element_count(spec: FabricSpec) -> int:
    """Number of fabric elements (Q, F, ... gates) across all layers."""
    return sum(len(element_sites(spec, layer)) for layer in range(spec.n_layers))


def layers_for_parameters(spec: FabricSpec, n_params: int) -> int:
    """Smallest layer count whose fabric has at least n_params parameters."""
    if n_params < 1:
        raise ValidationError("parameter target must be positive")
    layers = 1
    while parameter_count(spec.with_layers(layers)) < n_params:
        layers += 1
    return layers


def zero_params(spec: FabricSpec) -> ParamVector:
    _, layout = expand_with_layout(spec)
    return ParamVector(np.zeros(len(layout)), layout)
