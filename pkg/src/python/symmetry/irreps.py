"""
Quantum-number irreps: sectors, CSF bases, dimensions and edge cases.

An irrep is labelled (M, n_alpha, n_beta, S) with S twice the total spin,
so the S^2 eigenvalue is S/2 (S/2 + 1).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

import numpy as np

from ..core.exceptions import SymmetryError, ValidationError
from ..sim.statevector import StateVector
from .operators import (
    ALPHA,
    BETA,
    s_squared_matrix,
    s_squared_value,
    spin_qubit,
    twice_spin,
)

logger = logging.getLogger(__name__)

DENSE_SECTOR_MAX_ORBITALS = 7


@dataclass(frozen=True)
class IrrepKey:
    """Irrep label (M, n_alpha, n_beta, S)."""
    M: int
    n_alpha: int
    n_beta: int
    S: int

    @property
    def n_electrons(self) -> int:
        return self.n_alpha + self.n_beta

    @property
    def sector(self) -> Tuple[int, int]:
        return (self.n_alpha, self.n_beta)

    def is_valid(self) -> bool:
        n = self.n_electrons
        return (
            self.M >= 0
            and 0 <= self.n_alpha <= self.M
            and 0 <= self.n_beta <= self.M
            and abs(self.n_alpha - self.n_beta) <= self.S <= min(n, 2 * self.M - n)
            and (self.S - n) % 2 == 0
        )

    def validate(self) -> None:
        """
        Raises:
            ValidationError: If the label violates the irrep constraints
        """
        if not self.is_valid():
            raise ValidationError(f"invalid irrep {self}")

    @classmethod
    def parse(cls, M: int, text: str) -> "IrrepKey":
        """Parse 'n_alpha,n_beta,S'."""
        try:
            n_alpha, n_beta, S = (int(part) for part in text.split(","))
        except ValueError as e:
            raise ValidationError(f"irrep must look like 'n_alpha,n_beta,S', got {text!r}") from e
        return cls(M, n_alpha, n_beta, S)

    def to_dict(self) -> Dict[str, int]:
        return {"M": self.M, "n_alpha": self.n_alpha, "n_beta": self.n_beta, "S": self.S}

    def __str__(self) -> str:
        return f"(M={self.M}, {self.n_alpha}, {self.n_beta}, S={self.S})"


@dataclass
class SectorBasis:
    """Determinants of one (n_alpha, n_beta) sector and its CSF blocks."""
    M: int
    key: Tuple[int, int]
    det_indices: np.ndarray
    csf_blocks: Dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return int(self.det_indices.shape[0])

    def block_dimensions(self) -> Dict[int, int]:
        return {S: block.shape[1] for S, block in self.csf_blocks.items()}

    def block(self, S: int) -> np.ndarray:
        if S not in self.csf_blocks:
            raise SymmetryError(f"sector {self.key} of M={self.M} has no S={S} irrep")
        return self.csf_blocks[S]

    def embed(self, S: int, coefficients: np.ndarray) -> StateVector:
        """Full statevector from coefficients in the CSF basis of one irrep."""
        amplitudes = np.zeros(1 << (2 * self.M))
        amplitudes[self.det_indices] = self.block(S) @ np.asarray(coefficients, dtype=float)
        return StateVector(2 * self.M, amplitudes)

    def project(self, S: int, state: StateVector) -> np.ndarray:
        """CSF-basis coefficients of a statevector's component in one irrep."""
        return self.block(S).T @ state.amplitudes[self.det_indices]


def sector_indices(M: int, n_alpha: int, n_beta: int) -> np.ndarray:
    """Sorted basis indices with the given per-spin popcounts."""
    if not (0 <= n_alpha <= M and 0 <= n_beta <= M):
        raise ValidationError(f"sector ({n_alpha}, {n_beta}) out of range for M={M}")
    indices = np.arange(1 << (2 * M), dtype=np.int64)
    counts_a = np.zeros_like(indices)
    counts_b = np.zeros_like(indices)
    for p in range(M):
        counts_a += (indices >> spin_qubit(p, ALPHA)) & 1
        counts_b += (indices >> spin_qubit(p, BETA)) & 1
    return indices[(counts_a == n_alpha) & (counts_b == n_beta)]


def _deterministic_basis(vectors: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """
    Orthonormal basis of span(vectors) picked by Gram-Schmidt over the
    projected unit vectors in determinant order; each column's largest
    component is made positive.
    """
    rank = vectors.shape[1]
    projector = vectors @ vectors.T
    chosen: List[np.ndarray] = []
    for i in range(projector.shape[0]):
        if len(chosen) == rank:
            break
        v = projector[:, i].copy()
        for u in chosen:
            v -= np.dot(u, v) * u
        norm = np.linalg.norm(v)
        if norm > tol:
            v /= norm
            # second pass for orthogonality at machine precision
            for u in chosen:
                v -= np.dot(u, v) * u
            v /= np.linalg.norm(v)
            if v[np.argmax(np.abs(v))] < 0:
                v = -v
            chosen.append(v)
    return np.stack(chosen, axis=1)


@lru_cache(maxsize=64)
def csf_basis(M: int, n_alpha: int, n_beta: int) -> SectorBasis:
    """
    Block-diagonalize S^2 within a sector.

    Args:
        M: Spatial orbital count (at most 7)
        n_alpha: Alpha electron count
        n_beta: Beta electron count

    Returns:
        SectorBasis with one orthonormal CSF block per S, ordered by S

    Raises:
        ValidationError: If M exceeds the dense bound or the sector is out of range
    """
    if M > DENSE_SECTOR_MAX_ORBITALS:
        raise ValidationError(f"dense sector diagonalization limited to M <= {DENSE_SECTOR_MAX_ORBITALS}")
    dets = sector_indices(M, n_alpha, n_beta)
    if dets.shape[0] == 0:
        raise SymmetryError(f"sector ({n_alpha}, {n_beta}) of M={M} is empty")
    block = s_squared_matrix(M)[dets][:, dets].toarray()
    eigenvalues, eigenvectors = np.linalg.eigh(block)
    spins = np.array([twice_spin(value) for value in eigenvalues])

    csf_blocks: Dict[int, np.ndarray] = {}
    for S in sorted(set(spins.tolist())):
        columns = eigenvectors[:, spins == S]
        residual = np.max(np.abs(eigenvalues[spins == S] - s_squared_value(S)))
        if residual > 1e-8:
            raise SymmetryError(f"S^2 eigenvalue off the S={S} ladder by {residual:.2e}")
        csf_blocks[S] = _deterministic_basis(columns)
    logger.debug(
        f"CSF basis M={M} sector=({n_alpha},{n_beta}): "
        f"{ {S: b.shape[1] for S, b in csf_blocks.items()} }"
    )
    return SectorBasis(M, (n_alpha, n_beta), dets, csf_blocks)


def irrep_dimension(key: IrrepKey) -> int:
    """
    Number of CSFs in an irrep:
    D = (S+1)/(M+1) * C(M+1, (N-S)/2) * C(M+1, (N+S)/2 + 1).
    """
    key.validate()
    M, N, S = key.M, key.n_electrons, key.S
    return (S + 1) * comb(M + 1, (N - S) // 2) * comb(M + 1, (N + S) // 2 + 1) // (M + 1)


def enumerate_irreps(M: int) -> List[Tuple[IrrepKey, int]]:
    """All irreps of M spatial orbitals with their dimensions, ordered by (n_alpha, n_beta, S)."""
    if M < 1:
        raise ValidationError(f"orbital count must be at least 1, got {M}")
    result = []
    for n_alpha in range(M + 1):
        for n_beta in range(M + 1):
            for S in range(abs(n_alpha - n_beta), 2 * M + 1, 2):
                key = IrrepKey(M, n_alpha, n_beta, S)
                if key.is_valid():
                    result.append((key, irrep_dimension(key)))
    return result


def irrep_basis(key: IrrepKey) -> np.ndarray:
    """CSF columns of an irrep in the sector determinant basis."""
    key.validate()
    return csf_basis(key.M, key.n_alpha, key.n_beta).block(key.S)


def haar_random_irrep_state(key: IrrepKey, seed: int) -> StateVector:
    """
    Haar-random real state inside an irrep.

    Gaussian coefficients in the CSF basis are drawn from a Philox
    counter-based generator seeded with `seed`, normalized and transformed
    back to the determinant basis.
    """
    key.validate()
    basis = csf_basis(key.M, key.n_alpha, key.n_beta)
    dim = basis.block(key.S).shape[1]
    rng = np.random.Generator(np.random.Philox(seed))
    coefficients = rng.standard_normal(dim)
    coefficients /= np.linalg.norm(coefficients)
    return basis.embed(key.S, coefficients)


def unconstrained_irrep(key: IrrepKey) -> IrrepKey:
    """
    Strip the high-spin constraint: the larger spin count is decremented
    until both are equal, then both together, until S electrons are removed.
    """
    key.validate()
    n_alpha, n_beta, remaining = key.n_alpha, key.n_beta, key.S
    while remaining > 0:
        if n_alpha > n_beta:
            n_alpha -= 1
            remaining -= 1
        elif n_beta > n_alpha:
            n_beta -= 1
            remaining -= 1
        else:
            n_alpha -= 1
            n_beta -= 1
            remaining -= 2
    return IrrepKey(key.M - key.S, n_alpha, n_beta, 0)


def classify_edge_case(key: IrrepKey) -> Tuple[bool, IrrepKey]:
    """
    Decide whether Q-type fabrics are universal on an irrep.

    Non-universal iff the unconstrained irrep is all holes or all particles,
    at least two orbitals remain in it, and the irrep is at least a triplet.

    Returns:
        (universal_for_Q_fabric, unconstrained irrep)
    """
    unconstrained = unconstrained_irrep(key)
    remaining = unconstrained.M
    extreme = unconstrained.n_alpha in (0, remaining)
    non_universal = extreme and remaining >= 2 and key.S >= 2
    return (not non_universal, unconstrained)


def edge_case_table(M: int) -> List[Tuple[IrrepKey, int]]:
    """Irreps of M orbitals on which Q-type fabrics are not universal."""
    return [(key, dim) for key, dim in enumerate_irreps(M) if not classify_edge_case(key)[0]]
