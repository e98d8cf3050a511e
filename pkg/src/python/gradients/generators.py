"""
Generator spectra and shift-rule classes of one-parameter gates.

With U(theta) = exp(-i theta Q / 2), Q = 2i dU/dtheta at theta = 0. For our
real gates dU/dtheta(0) is the antisymmetric generator K, so Q = 2iK is
Hermitian.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from ..core.exceptions import ShiftRuleError
from ..gates.catalog import GATE_KINDS, GateName, gate_kind
from ..gates.matrices import generator

SPECTRUM_TOL = 1e-10


class RuleClass(str, Enum):
    """Parameter-shift rule families."""
    TWO_TERM = "two_term"
    FOUR_TERM = "four_term"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class GeneratorReport:
    """Spectrum of a gate generator and the shift rule it admits."""
    kind: GateName
    eigenvalues: Tuple[float, ...]
    shift_c: float
    scale_a: float
    rule_class: RuleClass

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "eigenvalues": sorted({round(e, 10) + 0.0 for e in self.eigenvalues}),
            "shift_c": self.shift_c,
            "scale_a": self.scale_a,
            "rule_class": self.rule_class.value,
        }


def classify_generator(kind, tol: float = SPECTRUM_TOL) -> GeneratorReport:
    """
    Classify a one-parameter gate by its generator spectrum.

    The centered generator Qbar = Q - tr(Q)/d is two-term if Qbar^2 = a^2 I
    and four-term if Qbar^3 = a^2 Qbar; anything else is unsupported.

    Raises:
        ShiftRuleError: For constant or multi-parameter kinds
    """
    spec = gate_kind(kind)
    if spec.n_params != 1:
        raise ShiftRuleError(f"{spec.name.value} has {spec.n_params} parameters; shift rules need exactly 1")

    q = 2j * generator(spec.name)
    dim = q.shape[0]
    shift_c = float(np.real(np.trace(q))) / dim
    q_bar = q - shift_c * np.eye(dim)
    eigenvalues = tuple(float(e) for e in np.linalg.eigvalsh(q_bar))
    a_squared = max(e * e for e in eigenvalues)
    scale_a = float(np.sqrt(a_squared))

    q2 = q_bar @ q_bar
    if np.max(np.abs(q2 - a_squared * np.eye(dim))) < tol:
        rule_class = RuleClass.TWO_TERM
    elif np.max(np.abs(q2 @ q_bar - a_squared * q_bar)) < tol:
        rule_class = RuleClass.FOUR_TERM
    else:
        rule_class = RuleClass.UNSUPPORTED
    return GeneratorReport(spec.name, eigenvalues, shift_c, scale_a, rule_class)


def classify_catalog() -> List[GeneratorReport]:
    """Reports for every one-parameter kind in the catalog."""
    return [classify_generator(name) for name, spec in GATE_KINDS.items() if spec.n_params == 1]
