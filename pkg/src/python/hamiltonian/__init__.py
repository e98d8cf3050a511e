"""
Hamiltonian Package

Fermionic operators under the alpha-then-beta Jordan-Wigner mapping,
integral sets and FCIDUMP files, model Hamiltonians and the exact
diagonalization reference.
"""

from .fci import fci_ground_state, sector_matrix, seniority_zero_ground_state
from .fermion import FermionOp, jordan_wigner, s_squared_fermion
from .integrals import IntegralSet, from_integrals, read_fcidump, write_fcidump
from .models import MODELS, hubbard_integrals, model_hamiltonian, random_integrals

__all__ = [
    "FermionOp",
    "IntegralSet",
    "MODELS",
    "fci_ground_state",
    "from_integrals",
    "hubbard_integrals",
    "jordan_wigner",
    "model_hamiltonian",
    "random_integrals",
    "read_fcidump",
    "s_squared_fermion",
    "sector_matrix",
    "seniority_zero_ground_state",
    "write_fcidump",
]
