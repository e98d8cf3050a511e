"""
Spin-symmetry operators under the interleaved qubit ordering.

Qubit 2p holds spin orbital p-alpha and qubit 2p+1 holds p-beta. The
Jordan-Wigner strings run over all alpha modes first, then over the beta
modes, so a same-spin hopping p <-> q carries Z factors only on the
intermediate orbitals of that spin.
"""

from functools import lru_cache
from typing import List, Tuple

import numpy as np
from scipy import sparse

from ..core.exceptions import ValidationError
from ..sim.pauli import PauliString, PauliSum

ALPHA = "alpha"
BETA = "beta"


def alpha_qubit(p: int) -> int:
    return 2 * p


def beta_qubit(p: int) -> int:
    return 2 * p + 1


def spin_qubit(p: int, spin: str) -> int:
    if spin == ALPHA:
        return alpha_qubit(p)
    if spin == BETA:
        return beta_qubit(p)
    raise ValidationError(f"unknown spin {spin!r}; expected 'alpha' or 'beta'")


def spin_mask(M: int, spin: str) -> int:
    """Bit mask of all qubits of one spin."""
    return sum(1 << spin_qubit(p, spin) for p in range(M))


def spin_counts(index: int, M: int) -> Tuple[int, int]:
    """(n_alpha, n_beta) of a computational basis index."""
    return (bin(index & spin_mask(M, ALPHA)).count("1"),
            bin(index & spin_mask(M, BETA)).count("1"))


def seniority(index: int, M: int) -> int:
    """Number of singly occupied spatial orbitals of a basis index."""
    return sum(((index >> alpha_qubit(p)) & 1) ^ ((index >> beta_qubit(p)) & 1) for p in range(M))


def _check_orbitals(M: int) -> None:
    if M < 1:
        raise ValidationError(f"orbital count must be at least 1, got {M}")


def number_operator(M: int, spin: str) -> PauliSum:
    """
    Same-spin number operator N = (M/2) I - sum_p Z_p / 2.

    Args:
        M: Spatial orbital count
        spin: 'alpha' or 'beta'
    """
    _check_orbitals(M)
    terms = [(M / 2.0, PauliString())]
    terms += [(-0.5, PauliString(((spin_qubit(p, spin), "Z"),))) for p in range(M)]
    return PauliSum(terms).canonical()


def total_number_operator(M: int) -> PauliSum:
    return number_operator(M, ALPHA) + number_operator(M, BETA)


def _pair_string(p: int, q: int, first: str, second: str, spin: str) -> List[Tuple[int, str]]:
    """first_p Z...Z second_q on one spin, Z over the intermediate orbitals of that spin."""
    factors = [(spin_qubit(p, spin), first), (spin_qubit(q, spin), second)]
    factors += [(spin_qubit(r, spin), "Z") for r in range(p + 1, q)]
    return factors


# (alpha pair letters, beta pair letters, sign) of the exchange part of S^2
_EXCHANGE_TERMS = (
    ("XX", "XX", 1.0), ("XX", "YY", 1.0), ("XY", "XY", 1.0), ("XY", "YX", -1.0),
    ("YX", "XY", -1.0), ("YX", "YX", 1.0), ("YY", "XX", 1.0), ("YY", "YY", 1.0),
)


def s_squared_pauli(M: int) -> PauliSum:
    """
    Pauli expansion of the total spin operator S^2.

    3M/8 I - 3/8 sum_p Z_p Z_pbar
    + 1/8 sum_{p<q} (Z_p Z_q + Z_pbar Z_qbar - Z_p Z_qbar - Z_pbar Z_q)
    - 1/8 sum_{p<q} (exchange strings XZX / YZY on both spins)
    """
    _check_orbitals(M)
    terms: List[Tuple[float, PauliString]] = [(3.0 * M / 8.0, PauliString())]
    for p in range(M):
        terms.append((-3.0 / 8.0, PauliString(((alpha_qubit(p), "Z"), (beta_qubit(p), "Z")))))
    for p in range(M):
        for q in range(p + 1, M):
            a_p, a_q, b_p, b_q = alpha_qubit(p), alpha_qubit(q), beta_qubit(p), beta_qubit(q)
            terms.append((0.125, PauliString(((a_p, "Z"), (a_q, "Z")))))
            terms.append((0.125, PauliString(((b_p, "Z"), (b_q, "Z")))))
            terms.append((-0.125, PauliString(((a_p, "Z"), (b_q, "Z")))))
            terms.append((-0.125, PauliString(((b_p, "Z"), (a_q, "Z")))))
            for alpha_letters, beta_letters, sign in _EXCHANGE_TERMS:
                factors = (_pair_string(p, q, alpha_letters[0], alpha_letters[1], ALPHA)
                           + _pair_string(p, q, beta_letters[0], beta_letters[1], BETA))
                terms.append((-0.125 * sign, PauliString(tuple(factors))))
    return PauliSum(terms).canonical()


def s_squared_value(S: int) -> float:
    """Eigenvalue S/2 (S/2 + 1) for twice-spin S."""
    return 0.5 * S * (0.5 * S + 1.0)


def twice_spin(eigenvalue: float) -> int:
    """Invert s_squared_value: S = sqrt(1 + 4 lambda) - 1, rounded."""
    return int(round(np.sqrt(1.0 + 4.0 * max(eigenvalue, 0.0)) - 1.0))


@lru_cache(maxsize=8)
def s_squared_matrix(M: int) -> sparse.csr_matrix:
    """Sparse 4^M x 4^M matrix of S^2."""
    return s_squared_pauli(M).to_sparse(2 * M)
