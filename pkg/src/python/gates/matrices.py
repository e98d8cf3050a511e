"""
Reference matrices of every gate kind.

All matrices are real and use the big-endian local index (first wire =
most significant bit). The 4-qubit number-preserving gates act on wires
(0alpha, 0beta, 1alpha, 1beta); they are built as operators on a 4-qubit
register whose basis index bit j is wire j (so determinant #k is register
index k) and converted to the local convention at the end.

Angle convention: every Givens-type rotation uses c = cos(theta/2),
s = sin(theta/2) and maps its "source" state u to c*u + s*v.
"""

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from ..core.exceptions import GateCatalogError
from ..sim.statevector import GateMatrix, embed_operator, local_from_register
from .catalog import GateName, PiGate, gate_kind

SQRT_HALF = 1.0 / np.sqrt(2.0)

# Constant elementary gates
X_MATRIX = np.array([[0.0, 1.0], [1.0, 0.0]])
Z_MATRIX = np.diag([1.0, -1.0])
H_MATRIX = SQRT_HALF * np.array([[1.0, 1.0], [1.0, -1.0]])
CNOT_MATRIX = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0],
])
CZ_MATRIX = np.diag([1.0, 1.0, 1.0, -1.0])
SWAP_MATRIX = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])
FSWAP_MATRIX = CZ_MATRIX @ SWAP_MATRIX

# 4-qubit register basis vectors for the spin-coupled two-electron states
SINGLET_69 = np.zeros(16)
SINGLET_69[[6, 9]] = SQRT_HALF
TRIPLET_69 = np.zeros(16)
TRIPLET_69[6], TRIPLET_69[9] = SQRT_HALF, -SQRT_HALF


def _unit(index: int, dim: int = 16) -> np.ndarray:
    vec = np.zeros(dim)
    vec[index] = 1.0
    return vec


# Rotation planes (u -> c u + s v) of the single-parameter QNP gates in the
# register basis; gates with two planes rotate both by the same angle.
QNP_PLANES: Dict[GateName, List[Tuple[np.ndarray, np.ndarray]]] = {
    GateName.QNP_PX: [(_unit(3), _unit(12))],
    GateName.QNP_A1B0: [(_unit(1), _unit(4))],
    GateName.QNP_A0B1: [(_unit(2), _unit(8))],
    GateName.QNP_A2B1: [(_unit(7), _unit(13))],
    GateName.QNP_A1B2: [(_unit(11), _unit(14))],
    GateName.QNP_1P: [(_unit(1), _unit(4)), (_unit(2), _unit(8))],
    GateName.QNP_1H: [(_unit(7), _unit(13)), (_unit(11), _unit(14))],
    GateName.QNP_PBL: [(_unit(3), -SINGLET_69)],
    GateName.QNP_PBU: [(_unit(12), -SINGLET_69)],
}

# Orthonormal columns (#3, #12, singlet) spanning the F gate's SO(3) block
F_TRIPLE = np.stack([_unit(3), _unit(12), SINGLET_69], axis=1)

# Upper-triangle positions of a 3x3 / 4x4 antisymmetric parameter matrix
SO3_PAIRS = ((0, 1), (0, 2), (1, 2))
SO4_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

HAMMING8_WEIGHT1 = (1, 2, 4)
HAMMING8_WEIGHT2 = (3, 5, 6)


def ry(theta: float) -> np.ndarray:
    """RY(theta) = exp(-i theta Y / 2) as a real matrix."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def cry(theta: float) -> np.ndarray:
    """Controlled RY, control on the first wire."""
    matrix = np.eye(4)
    matrix[2:, 2:] = ry(theta)
    return matrix


def givens(theta: float) -> np.ndarray:
    """Two-qubit Givens rotation moving an excitation from the top to the bottom wire."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, c, s, 0.0],
        [0.0, -s, c, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])


def plane_rotation(u: np.ndarray, v: np.ndarray, theta: float) -> np.ndarray:
    """Rotation by theta/2 in the plane of orthonormal u, v: u -> c u + s v."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return (np.eye(u.shape[0]) + (c - 1.0) * (np.outer(u, u) + np.outer(v, v))
            + s * (np.outer(v, u) - np.outer(u, v)))


def plane_generator(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Antisymmetric K with plane_rotation(u, v, theta) = expm(theta K)."""
    return 0.5 * (np.outer(v, u) - np.outer(u, v))


def antisymmetric(values: Sequence[float], pairs: Sequence[Tuple[int, int]], dim: int) -> np.ndarray:
    """Antisymmetric matrix holding `values` in the listed upper-triangle positions."""
    matrix = np.zeros((dim, dim))
    for value, (i, j) in zip(values, pairs):
        matrix[i, j] = value
        matrix[j, i] = -value
    return matrix


def so3_exp(x1: float, x2: float, x3: float) -> np.ndarray:
    """exp(x_hat) for the antisymmetric x_hat with upper triangle (x1, x2, x3), by Rodrigues' formula."""
    x_hat = antisymmetric((x1, x2, x3), SO3_PAIRS, 3)
    angle = np.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    if angle < 1e-8:
        return np.eye(3) + x_hat + 0.5 * x_hat @ x_hat
    return (np.eye(3) + (np.sin(angle) / angle) * x_hat
            + ((1.0 - np.cos(angle)) / angle ** 2) * x_hat @ x_hat)


def _register_or(theta: float) -> np.ndarray:
    g = givens(theta)
    return embed_operator(g, (0, 2), 4) @ embed_operator(g, (1, 3), 4)


@lru_cache(maxsize=None)
def _register_ofswap() -> np.ndarray:
    return embed_operator(FSWAP_MATRIX, (0, 2), 4) @ embed_operator(FSWAP_MATRIX, (1, 3), 4)


def _register_planes(name: GateName, theta: float) -> np.ndarray:
    matrix = np.eye(16)
    for u, v in QNP_PLANES[name]:
        matrix = plane_rotation(u, v, theta) @ matrix
    return matrix


def _register_f(params: Sequence[float]) -> np.ndarray:
    theta_1p, theta_1h, x1, x2, x3 = params
    block = F_TRIPLE @ so3_exp(x1, x2, x3) @ F_TRIPLE.T
    triple = np.eye(16) - F_TRIPLE @ F_TRIPLE.T + block
    return _register_planes(GateName.QNP_1P, theta_1p) @ _register_planes(GateName.QNP_1H, theta_1h) @ triple


def pi_matrix(pi_gate: PiGate) -> np.ndarray:
    """Local matrix of the constant leading element of a Q gate."""
    pi_gate = PiGate(pi_gate)
    if pi_gate is PiGate.IDENTITY:
        return np.eye(16)
    if pi_gate is PiGate.OR_PI:
        return local_from_register(_register_or(np.pi))
    return local_from_register(_register_ofswap())


def hamming8(params: Sequence[float]) -> np.ndarray:
    """SO(3) rotations on the weight-1 and weight-2 subspaces of three qubits."""
    matrix = np.eye(8)
    matrix[np.ix_(HAMMING8_WEIGHT1, HAMMING8_WEIGHT1)] = so3_exp(*params[:3])
    matrix[np.ix_(HAMMING8_WEIGHT2, HAMMING8_WEIGHT2)] = so3_exp(*params[3:])
    return matrix


def gate_matrix(kind, params: Sequence[float] = (), pi_gate: PiGate = PiGate.IDENTITY) -> np.ndarray:
    """
    Raw local matrix of a gate kind at the given parameters.

    Raises:
        GateCatalogError: If the parameter count does not match the kind
    """
    spec = gate_kind(kind)
    params = np.asarray(params, dtype=float).reshape(-1)
    if params.shape[0] != spec.n_params:
        raise GateCatalogError(
            f"{spec.name.value} takes {spec.n_params} parameters, got {params.shape[0]}"
        )
    name = spec.name

    if name is GateName.X:
        return X_MATRIX.copy()
    if name is GateName.H:
        return H_MATRIX.copy()
    if name is GateName.CNOT:
        return CNOT_MATRIX.copy()
    if name is GateName.CZ:
        return CZ_MATRIX.copy()
    if name is GateName.SWAP:
        return SWAP_MATRIX.copy()
    if name is GateName.FSWAP:
        return FSWAP_MATRIX.copy()
    if name is GateName.RY:
        return ry(params[0])
    if name is GateName.CRY:
        return cry(params[0])
    if name in (GateName.G, GateName.HAMMING_GIVENS):
        return givens(params[0])
    if name is GateName.QNP_OR:
        return local_from_register(_register_or(params[0]))
    if name in QNP_PLANES:
        return local_from_register(_register_planes(name, params[0]))
    if name is GateName.OFSWAP:
        return local_from_register(_register_ofswap())
    if name is GateName.F:
        return local_from_register(_register_f(params))
    if name is GateName.Q:
        theta, phi = params
        return (local_from_register(_register_or(phi))
                @ local_from_register(_register_planes(GateName.QNP_PX, theta))
                @ pi_matrix(pi_gate))
    if name is GateName.SO4:
        return expm(antisymmetric(params, SO4_PAIRS, 4))
    if name is GateName.HAMMING8:
        return hamming8(params)
    raise GateCatalogError(f"no reference matrix for {name.value}")


def reference_matrix(kind, params: Sequence[float] = (), pi_gate: PiGate = PiGate.IDENTITY) -> GateMatrix:
    """
    Exact matrix of a gate kind.

    Args:
        kind: Gate kind (enum member or name)
        params: Parameter vector of length n_params(kind)
        pi_gate: Leading constant element, only used by the Q kind

    Returns:
        GateMatrix in the big-endian local convention
    """
    return GateMatrix(gate_matrix(kind, params, pi_gate))


# Generators: for every one-parameter kind U(theta) = expm(theta K)


def _register_generator(name: GateName) -> np.ndarray:
    if name is GateName.QNP_OR:
        k = local_generator_2q()
        return embed_operator(k, (0, 2), 4) + embed_operator(k, (1, 3), 4)
    return sum(plane_generator(u, v) for u, v in QNP_PLANES[name])


def local_generator_2q() -> np.ndarray:
    """Generator of the Givens rotation G."""
    k = np.zeros((4, 4))
    k[1, 2], k[2, 1] = 0.5, -0.5
    return k


@lru_cache(maxsize=None)
def _generator_cached(name: GateName) -> np.ndarray:
    if name is GateName.RY:
        return np.array([[0.0, -0.5], [0.5, 0.0]])
    if name is GateName.CRY:
        k = np.zeros((4, 4))
        k[2, 3], k[3, 2] = -0.5, 0.5
        return k
    if name in (GateName.G, GateName.HAMMING_GIVENS):
        return local_generator_2q()
    if name is GateName.QNP_OR or name in QNP_PLANES:
        return local_from_register(_register_generator(name))
    raise GateCatalogError(f"{name.value} is not a one-parameter gate")


def generator(kind) -> np.ndarray:
    """
    Real antisymmetric K with U(theta) = expm(theta K) for one-parameter kinds.

    Raises:
        GateCatalogError: For constant or multi-parameter kinds
    """
    spec = gate_kind(kind)
    if spec.n_params != 1:
        raise GateCatalogError(f"{spec.name.value} has {spec.n_params} parameters, not 1")
    return _generator_cached(spec.name).copy()


@lru_cache(maxsize=None)
def _linear_generators_cached(name: GateName) -> Tuple[np.ndarray, ...]:
    if name is GateName.F:
        register = [
            _register_generator(GateName.QNP_1P),
            _register_generator(GateName.QNP_1H),
        ]
        for pair in SO3_PAIRS:
            e = antisymmetric((1.0,), (pair,), 3)
            register.append(F_TRIPLE @ e @ F_TRIPLE.T)
        return tuple(local_from_register(k) for k in register)
    if name is GateName.SO4:
        return tuple(antisymmetric((1.0,), (pair,), 4) for pair in SO4_PAIRS)
    if name is GateName.HAMMING8:
        result = []
        for subspace in (HAMMING8_WEIGHT1, HAMMING8_WEIGHT2):
            for pair in SO3_PAIRS:
                k = np.zeros((8, 8))
                k[np.ix_(subspace, subspace)] = antisymmetric((1.0,), (pair,), 3)
                result.append(k)
        return tuple(result)
    raise GateCatalogError(f"{name.value} is not an exponential-family gate")


def linear_generators(kind) -> Tuple[np.ndarray, ...]:
    """
    Generators K_i of the multi-parameter kinds with U(p) = expm(sum_i p_i K_i)
    (F, SO4, Hamming8).
    """
    return _linear_generators_cached(gate_kind(kind).name)
