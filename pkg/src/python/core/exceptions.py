"""
Custom exceptions for the gate fabric simulator.

This module defines specific exceptions for the failure modes of the
simulator, and the mapping from exception class to CLI exit code.
"""

from typing import Dict, Optional, Type


class QNPFabricError(Exception):
    """Base exception for all simulator errors."""
    pass


class ValidationError(QNPFabricError):
    """Raised when an input violates a shape, index or invariant constraint."""
    pass


class ConfigurationError(ValidationError):
    """Raised when configuration is invalid or carries unknown keys."""
    pass


class GateCatalogError(ValidationError):
    """Raised for unknown gate kinds, wrong parameter counts or missing decompositions."""
    pass


class FCIDUMPError(ValidationError):
    """Raised when an FCIDUMP file cannot be parsed."""
    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ShiftRuleError(ValidationError):
    """Raised when a parameter-shift rule cannot be built or applied."""
    pass


class SymmetryError(QNPFabricError):
    """Raised when an operator breaks a symmetry or a sector is empty."""
    pass


class SimulationError(QNPFabricError):
    """Raised when a numerical routine fails at runtime."""
    pass


# Exit code mapping for the command line front end
EXIT_CODE_MAPPING: Dict[Type[BaseException], int] = {
    ValidationError: 1,
    SymmetryError: 2,
    SimulationError: 2,
    QNPFabricError: 2,
}


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI exit code for an exception (2 for anything unmapped)."""
    for klass in type(exc).__mro__:
        if klass in EXIT_CODE_MAPPING:
            return EXIT_CODE_MAPPING[klass]
    return 2
