"""
Reference states and parameter initialization.
"""

import logging
from typing import Tuple

import numpy as np

from ..core.exceptions import SimulationError, ValidationError
from ..gates.catalog import GateName, PiGate
from ..gates.circuit import apply_circuit_inverse
from ..sim.statevector import StateVector
from ..symmetry.operators import alpha_qubit, beta_qubit
from .spec import F_TYPE_KINDS, FabricKind, FabricSpec, ParamVector, Strategy
from .tessellation import expand_with_layout

logger = logging.getLogger(__name__)


def aufbau_index(M: int, n_alpha: int, n_beta: int) -> int:
    """Basis index with the lowest n_alpha alpha and n_beta beta orbitals occupied."""
    if not (0 <= n_alpha <= M and 0 <= n_beta <= M):
        raise ValidationError(f"electron counts ({n_alpha}, {n_beta}) out of range for M={M}")
    index = 0
    for p in range(n_alpha):
        index |= 1 << alpha_qubit(p)
    for p in range(n_beta):
        index |= 1 << beta_qubit(p)
    return index


def reference_state(M: int, n_alpha: int, n_beta: int) -> StateVector:
    """
    Aufbau determinant prepared by X gates on the occupied qubits.

    Raises:
        ValidationError: If the counts are out of range
    """
    return StateVector.basis(2 * M, aufbau_index(M, n_alpha, n_beta))


def adjusted_reference_state(spec: FabricSpec, n_alpha: int, n_beta: int) -> StateVector:
    """
    Signed basis state that the fabric at all-zero parameters maps onto the
    aufbau determinant.

    At zero parameters every rotation is the identity, so the fabric reduces
    to the product of its Pi elements, a signed permutation.

    Raises:
        ValidationError: For non-fermionic fabrics
        SimulationError: If the inverse image is not a single basis state
    """
    if not spec.is_fermionic:
        raise ValidationError(f"{spec.kind.value} fabric has no fermionic reference state")
    gates, layout = expand_with_layout(spec)
    target = reference_state(spec.M, n_alpha, n_beta)
    state = apply_circuit_inverse(target, gates, np.zeros(len(layout)))
    support = np.flatnonzero(np.abs(state.amplitudes) > 1e-12)
    if support.shape[0] != 1:
        raise SimulationError(f"zero-parameter fabric is not a signed permutation ({support.shape[0]} amplitudes)")
    index = int(support[0])
    sign = float(np.sign(state.amplitudes[index]))
    logger.debug(f"Adjusted reference for {spec.kind.value}/{spec.pi_gate.value}: index {index}, sign {sign:+.0f}")
    return StateVector.basis(spec.n_qubits, index, sign)


def strategy_pi_gate(spec: FabricSpec, strategy: Strategy) -> PiGate:
    """Pi element that goes with a strategy: OR_pi for A on Q fabrics, identity otherwise."""
    strategy = Strategy(strategy)
    if spec.kind is FabricKind.Q and strategy is Strategy.A:
        return PiGate.OR_PI
    return PiGate.IDENTITY


def initialize(spec: FabricSpec, strategy: Strategy) -> ParamVector:
    """
    Initial parameters of a fermionic fabric.

    Q: theta = 0 with phi = pi/2 (A) or phi = pi (B). OR_only uses the same
    phi values and PX_only starts at zero. F-type fabrics start at zero,
    their identity element. The matching Pi element is given by
    strategy_pi_gate; use initialized_fabric to get both together.

    Raises:
        ValidationError: If the strategy is undefined for the fabric kind
    """
    try:
        strategy = Strategy(strategy)
    except ValueError as e:
        raise ValidationError(f"unknown initialization strategy {strategy!r}") from e
    if not spec.is_fermionic:
        raise ValidationError(f"initialization strategy {strategy.value} is undefined for {spec.kind.value} fabrics")

    gates, layout = expand_with_layout(spec)
    values = np.zeros(len(layout))
    phi = np.pi / 2 if strategy is Strategy.A else np.pi
    if spec.kind in (FabricKind.Q, FabricKind.OR_ONLY):
        for gate in gates:
            if gate.kind is GateName.QNP_OR and gate.param_slot is not None:
                values[gate.param_slot] = phi
    elif spec.kind not in F_TYPE_KINDS and spec.kind is not FabricKind.PX_ONLY:
        raise ValidationError(f"initialization strategy {strategy.value} is undefined for {spec.kind.value} fabrics")
    return ParamVector(values, layout)


def initialized_fabric(spec: FabricSpec, strategy: Strategy) -> Tuple[FabricSpec, ParamVector]:
    """Spec with the strategy's Pi element, and its initial parameters."""
    adjusted = spec.with_pi_gate(strategy_pi_gate(spec, strategy))
    return adjusted, initialize(adjusted, strategy)


def random_params(spec: FabricSpec, seed: int, scale: float = np.pi) -> ParamVector:
    """Uniform parameters in [-scale, scale) from a Philox stream."""
    _, layout = expand_with_layout(spec)
    rng = np.random.Generator(np.random.Philox(seed))
    return ParamVector(rng.uniform(-scale, scale, len(layout)), layout)
