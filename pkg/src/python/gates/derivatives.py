"""
Parameter derivatives of gate matrices.
"""

from typing import List, Sequence

import numpy as np
from scipy.linalg import expm_frechet

from ..core.exceptions import GateCatalogError
from .catalog import GateName, PiGate, gate_kind
from .matrices import gate_matrix, generator, linear_generators, pi_matrix


def gate_derivatives(kind, params: Sequence[float] = (),
                     pi_gate: PiGate = PiGate.IDENTITY) -> List[np.ndarray]:
    """
    dU/dp_i for every parameter of a gate kind, in the local convention.

    One-parameter kinds use dU/dtheta = K U. The exponential-family kinds
    (F, SO4, Hamming8) use the Frechet derivative of expm along each
    generator. Q is differentiated through its product structure.

    Raises:
        GateCatalogError: For constant kinds
    """
    spec = gate_kind(kind)
    params = np.asarray(params, dtype=float).reshape(-1)
    name = spec.name
    if spec.n_params == 0:
        raise GateCatalogError(f"{name.value} has no parameters")

    if spec.n_params == 1:
        return [generator(name) @ gate_matrix(name, params)]

    if name is GateName.Q:
        theta, phi = params
        or_matrix = gate_matrix(GateName.QNP_OR, [phi])
        px_matrix = gate_matrix(GateName.QNP_PX, [theta])
        pi = pi_matrix(pi_gate)
        d_theta = or_matrix @ generator(GateName.QNP_PX) @ px_matrix @ pi
        d_phi = generator(GateName.QNP_OR) @ or_matrix @ px_matrix @ pi
        return [d_theta, d_phi]

    generators = linear_generators(name)
    exponent = sum(p * k for p, k in zip(params, generators))
    return [expm_frechet(exponent, k, compute_expm=False) for k in generators]
