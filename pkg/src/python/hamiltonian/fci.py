"""
Exact diagonalization inside one irrep.
"""

import logging
from typing import Tuple

import numpy as np
from scipy import sparse

from ..core.exceptions import SymmetryError, ValidationError
from ..sim.pauli import PauliSum
from ..sim.statevector import StateVector
from ..symmetry.irreps import DENSE_SECTOR_MAX_ORBITALS, IrrepKey, csf_basis, sector_indices
from ..symmetry.operators import s_squared_matrix, seniority

logger = logging.getLogger(__name__)

COMMUTATOR_TOL = 1e-8


def _fix_sign(vector: np.ndarray) -> np.ndarray:
    return -vector if vector[np.argmax(np.abs(vector))] < 0 else vector


def sector_matrix(H: PauliSum, M: int, det_indices: np.ndarray) -> np.ndarray:
    """
    Dense block of H on a set of determinants.

    Raises:
        SymmetryError: If H couples the determinants to anything outside the set
    """
    if H.n_qubits_required > 2 * M:
        raise ValidationError(f"operator needs {H.n_qubits_required} qubits, M={M} gives {2 * M}")
    matrix = sparse.csc_matrix(H.to_sparse(2 * M))[:, det_indices]
    inside = np.zeros(matrix.shape[0], dtype=bool)
    inside[det_indices] = True
    leak = matrix[~inside, :]
    if leak.nnz and np.max(np.abs(leak.data)) > COMMUTATOR_TOL:
        raise SymmetryError("operator does not conserve the particle numbers of the sector")
    return matrix[det_indices, :].toarray()


def fci_ground_state(H: PauliSum, key: IrrepKey) -> Tuple[float, StateVector]:
    """
    Lowest eigenpair of H within an irrep.

    H is restricted to the determinants of the (n_alpha, n_beta) sector,
    checked against S^2 there, projected onto the CSF block of spin S and
    diagonalized densely.

    Returns:
        (energy, full-register state); the state's largest component is positive

    Raises:
        SymmetryError: If H leaks out of the sector or does not commute with S^2
        ValidationError: If the irrep is invalid or M is beyond the dense bound
    """
    key.validate()
    if key.M > DENSE_SECTOR_MAX_ORBITALS:
        raise ValidationError(f"dense diagonalization limited to M <= {DENSE_SECTOR_MAX_ORBITALS}")
    basis = csf_basis(key.M, key.n_alpha, key.n_beta)
    dets = basis.det_indices
    h_block = sector_matrix(H, key.M, dets)
    s2_block = s_squared_matrix(key.M)[dets][:, dets].toarray()
    commutator = np.max(np.abs(h_block @ s2_block - s2_block @ h_block), initial=0.0)
    if commutator > COMMUTATOR_TOL:
        raise SymmetryError(f"operator does not commute with S^2 (residual {commutator:.2e})")

    csfs = basis.block(key.S)
    projected = csfs.T @ h_block @ csfs
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (projected + projected.T))
    coefficients = eigenvectors[:, 0]
    amplitudes = _fix_sign(csfs @ coefficients)
    state = np.zeros(1 << (2 * key.M))
    state[dets] = amplitudes
    energy = float(eigenvalues[0])
    logger.debug(f"FCI {key}: dimension {csfs.shape[1]}, energy {energy:.12f}")
    return energy, StateVector(2 * key.M, state)


def seniority_zero_ground_state(H: PauliSum, M: int, n_pairs: int) -> Tuple[float, StateVector]:
    """
    Lowest eigenpair of H restricted to closed-shell determinants with n_pairs pairs.

    Exact for seniority-conserving Hamiltonians such as the pairing model.
    """
    dets = sector_indices(M, n_pairs, n_pairs)
    dets = dets[[seniority(int(d), M) == 0 for d in dets]]
    matrix = sparse.csc_matrix(H.to_sparse(2 * M))[:, dets][dets, :].toarray()
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (matrix + matrix.T))
    state = np.zeros(1 << (2 * M))
    state[dets] = _fix_sign(eigenvectors[:, 0])
    return float(eigenvalues[0]), StateVector(2 * M, state)
