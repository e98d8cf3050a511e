"""
Built-in model Hamiltonians for desk-scale experiments.
"""

import logging
from typing import Any, Callable, Dict, Mapping, Optional

import numpy as np

from ..core.exceptions import ValidationError
from ..sim.pauli import PauliSum
from ..symmetry.irreps import DENSE_SECTOR_MAX_ORBITALS
from ..symmetry.operators import ALPHA, BETA
from .fermion import FermionOp, jordan_wigner, pair_annihilation, pair_creation
from .integrals import IntegralSet, from_integrals, symmetrize_eightfold

logger = logging.getLogger(__name__)


def hubbard_integrals(M: int, t: float = 1.0, U: float = 4.0, periodic: bool = False) -> IntegralSet:
    """Nearest-neighbour hopping -t and on-site repulsion U as an integral set."""
    h = np.zeros((M, M))
    for p in range(M - 1):
        h[p, p + 1] = h[p + 1, p] = -t
    if periodic and M > 2:
        h[0, M - 1] = h[M - 1, 0] = -t
    g = np.zeros((M, M, M, M))
    for p in range(M):
        g[p, p, p, p] = U
    return IntegralSet(M, h, g)


def hubbard_chain(M: int, t: float = 1.0, U: float = 4.0, periodic: bool = False) -> PauliSum:
    return from_integrals(hubbard_integrals(M, t, U, periodic))


def pairing(M: int, G: float = 0.5, spacing: float = 1.0) -> PauliSum:
    """
    Reduced BCS pairing model
    H = sum_p eps_p (n_p,alpha + n_p,beta) - G sum_pq P_p^dagger P_q
    with eps_p = p * spacing. Conserves seniority.
    """
    terms = []
    for p in range(M):
        for spin in (ALPHA, BETA):
            terms.append((p * spacing, (((p, spin), True), ((p, spin), False))))
    for p in range(M):
        for q in range(M):
            terms.append((-G, pair_creation(p) + pair_annihilation(q)))
    return jordan_wigner(FermionOp(terms), M)


def random_integrals(M: int, seed: int = 0, scale: float = 1.0) -> IntegralSet:
    """Random symmetric integrals from a Philox stream."""
    rng = np.random.Generator(np.random.Philox(seed))
    h = rng.standard_normal((M, M)) * scale
    h = 0.5 * (h + h.T)
    g = symmetrize_eightfold(rng.standard_normal((M, M, M, M)) * scale * 0.5)
    return IntegralSet(M, h, g)


def random_symmetric(M: int, seed: int = 0, scale: float = 1.0) -> PauliSum:
    return from_integrals(random_integrals(M, seed, scale))


MODELS: Dict[str, Callable[..., PauliSum]] = {
    "hubbard_chain": hubbard_chain,
    "pairing": pairing,
    "random_symmetric": random_symmetric,
}


def model_hamiltonian(name: str, M: int, params: Optional[Mapping[str, Any]] = None,
                      seed: int = 0) -> PauliSum:
    """
    Build a named model Hamiltonian.

    Args:
        name: hubbard_chain (t, U, periodic), pairing (G, spacing)
              or random_symmetric (scale)
        M: Spatial orbital count
        params: Model parameters
        seed: Seed for random_symmetric

    Raises:
        ValidationError: For unknown names, unknown parameters or M out of range
    """
    if name not in MODELS:
        raise ValidationError(f"unknown model {name!r}; choose from {sorted(MODELS)}")
    if not 1 <= M <= DENSE_SECTOR_MAX_ORBITALS:
        raise ValidationError(f"model Hamiltonians support 1 <= M <= {DENSE_SECTOR_MAX_ORBITALS}, got {M}")
    kwargs = dict(params or {})
    if name == "random_symmetric":
        kwargs["seed"] = seed
    try:
        hamiltonian = MODELS[name](M, **kwargs)
    except TypeError as e:
        raise ValidationError(f"invalid parameters for {name}: {e}") from e
    logger.info(f"Built {name} Hamiltonian for M={M} with {len(hamiltonian)} Pauli terms")
    return hamiltonian
