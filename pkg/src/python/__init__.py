"""
QNP Fabric - quantum-number-preserving gate fabrics for fermionic VQE

This package contains a real-amplitude statevector simulator, the catalog of
quantum-number-preserving gates with their elementary decompositions, spin
symmetry machinery, fermionic Hamiltonians, gradient rules and the VQE
driver.
"""

__version__ = "0.1.0"
__author__ = "QNP Fabric Team"
