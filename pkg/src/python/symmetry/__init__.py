"""
Symmetry Package

Number and spin operators, CSF bases per sector, irrep dimensions,
Haar-random in-irrep sampling and the fabric edge-case classifier.
"""

from .irreps import (
    IrrepKey,
    SectorBasis,
    classify_edge_case,
    csf_basis,
    edge_case_table,
    enumerate_irreps,
    haar_random_irrep_state,
    irrep_basis,
    irrep_dimension,
    sector_indices,
)
from .operators import (
    ALPHA,
    BETA,
    number_operator,
    s_squared_matrix,
    s_squared_pauli,
    s_squared_value,
    seniority,
    spin_counts,
    total_number_operator,
)

__all__ = [
    "ALPHA",
    "BETA",
    "IrrepKey",
    "SectorBasis",
    "classify_edge_case",
    "csf_basis",
    "edge_case_table",
    "enumerate_irreps",
    "haar_random_irrep_state",
    "irrep_basis",
    "irrep_dimension",
    "number_operator",
    "s_squared_matrix",
    "s_squared_pauli",
    "s_squared_value",
    "sector_indices",
    "seniority",
    "spin_counts",
    "total_number_operator",
]
