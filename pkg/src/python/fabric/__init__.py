"""
Fabric Package

Layered tessellations of quantum-number-preserving and Hamming-weight
preserving gates, their flat parameter vectors, reference states and
initialization strategies.
"""

from .initialization import (
    adjusted_reference_state,
    aufbau_index,
    initialize,
    initialized_fabric,
    random_params,
    reference_state,
    strategy_pi_gate,
)
from .spec import FabricKind, FabricSpec, ParamVector, Strategy
from .tessellation import (
    element_count,
    element_sites,
    expand,
    expand_with_layout,
    layers_for_parameters,
    parameter_count,
    zero_params,
)

__all__ = [
    "FabricKind",
    "FabricSpec",
    "ParamVector",
    "Strategy",
    "adjusted_reference_state",
    "aufbau_index",
    "element_count",
    "element_sites",
    "expand",
    "expand_with_layout",
    "initialize",
    "initialized_fabric",
    "layers_for_parameters",
    "parameter_count",
    "random_params",
    "reference_state",
    "strategy_pi_gate",
    "zero_params",
]
