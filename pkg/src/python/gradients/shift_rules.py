"""
Parameter-shift rules.

Two-term rule for generators with spectrum {-1, +1}:
    df/dtheta = (f(theta + alpha) - f(theta - alpha)) / (2 sin alpha)
Four-term rule for spectrum {-1, 0, +1}:
    df/dtheta = d1 (f(theta + alpha) - f(theta - alpha)) - d2 (f(theta + beta) - f(theta - beta))
with 1/4 = d1 sin(alpha/2) - d2 sin(beta/2) and 1/2 = d1 sin(alpha) - d2 sin(beta).
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ShiftRuleError, ValidationError
from .generators import RuleClass, classify_generator

logger = logging.getLogger(__name__)

CONDITION_TOL = 1e-12
SQRT2 = np.sqrt(2.0)

FOUR_TERM_OPTIMAL_D1 = (SQRT2 + 1.0) / (4.0 * SQRT2)
FOUR_TERM_OPTIMAL_D2 = (SQRT2 - 1.0) / (4.0 * SQRT2)


def _is_multiple_of_pi(angle: float, tol: float = 1e-12) -> bool:
    return abs(np.sin(angle)) < tol


@dataclass(frozen=True)
class ShiftRule:
    """Linear combination of shifted evaluations: sum_i c_i f(theta + s_i)."""
    rule_class: RuleClass
    terms: Tuple[Tuple[float, float], ...]
    alpha: float
    beta: Optional[float] = None
    d1: Optional[float] = None
    d2: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "rule_class", RuleClass(self.rule_class))
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ShiftRuleError: If the coefficients do not satisfy the rule's conditions
        """
        if self.rule_class is RuleClass.TWO_TERM:
            if _is_multiple_of_pi(self.alpha):
                raise ShiftRuleError(f"two-term shift alpha={self.alpha} is a multiple of pi")
        elif self.rule_class is RuleClass.FOUR_TERM:
            residuals = four_term_residuals(self.d1, self.d2, self.alpha, self.beta)
            if max(abs(r) for r in residuals) > CONDITION_TOL:
                raise ShiftRuleError(f"four-term coefficients violate the rule conditions: {residuals}")
        else:
            raise ShiftRuleError("no shift rule exists for this generator class")

    def combine(self, evaluations: Sequence[float]) -> float:
        return float(sum(c * f for (c, _), f in zip(self.terms, evaluations)))

    @property
    def shifts(self) -> List[float]:
        return [shift for _, shift in self.terms]

    @property
    def coefficients(self) -> List[float]:
        return [c for c, _ in self.terms]

    def to_dict(self) -> Dict[str, object]:
        return {
            "rule_class": self.rule_class.value,
            "alpha": self.alpha,
            "beta": self.beta,
            "d1": self.d1,
            "d2": self.d2,
            "terms": [{"coefficient": c, "shift": s} for c, s in self.terms],
        }


def four_term_residuals(d1: float, d2: float, alpha: float, beta: float) -> Tuple[float, float]:
    """Residuals of the two four-term conditions."""
    return (
        d1 * np.sin(alpha / 2) - d2 * np.sin(beta / 2) - 0.25,
        d1 * np.sin(alpha) - d2 * np.sin(beta) - 0.5,
    )


def _two_term(alpha: float) -> ShiftRule:
    if _is_multiple_of_pi(alpha):
        raise ShiftRuleError(f"two-term shift alpha={alpha} is a multiple of pi")
    c = 1.0 / (2.0 * np.sin(alpha))
    return ShiftRule(RuleClass.TWO_TERM, ((c, alpha), (-c, -alpha)), alpha)


def _four_term(d1: float, d2: float, alpha: float, beta: float) -> ShiftRule:
    terms = ((d1, alpha), (-d1, -alpha), (-d2, beta), (d2, -beta))
    return ShiftRule(RuleClass.FOUR_TERM, terms, alpha, beta, d1, d2)


def solve_four_term(alpha: float, beta: float) -> Tuple[float, float]:
    """
    Coefficients (d1, d2) of the four-term rule for given shift angles.

    Raises:
        ShiftRuleError: For degenerate angle pairs
    """
    denominator = 4.0 * np.sin(beta / 2) * (np.cos(beta / 2) - np.cos(alpha / 2))
    if abs(denominator) < 1e-12 or _is_multiple_of_pi(alpha):
        raise ShiftRuleError(f"degenerate four-term angles alpha={alpha}, beta={beta}")
    d2 = (np.cos(alpha / 2) - 1.0) / denominator
    d1 = (0.5 + d2 * np.sin(beta)) / np.sin(alpha)
    return float(d1), float(d2)


def make_shift_rule(rule_class, alpha: float = np.pi / 2, beta: Optional[float] = None,
                    variance_optimal: bool = False) -> ShiftRule:
    """
    Build a two-term or four-term shift rule.

    Args:
        rule_class: 'two_term' or 'four_term'
        alpha: First shift angle
        beta: Second shift angle of the four-term rule (pi when omitted)
        variance_optimal: Use the minimum-variance coefficients and angles

    Raises:
        ShiftRuleError: For unknown classes, unsupported generators or degenerate angles
    """
    try:
        rule_class = RuleClass(rule_class)
    except ValueError as e:
        raise ShiftRuleError(f"no shift rule family {rule_class!r}") from e

    if rule_class is RuleClass.TWO_TERM:
        return _two_term(np.pi / 2 if variance_optimal else alpha)
    if rule_class is RuleClass.FOUR_TERM:
        if variance_optimal:
            return _four_term(FOUR_TERM_OPTIMAL_D1, FOUR_TERM_OPTIMAL_D2, np.pi / 2, 3 * np.pi / 2)
        beta = np.pi if beta is None else beta
        d1, d2 = solve_four_term(alpha, beta)
        return _four_term(d1, d2, alpha, beta)
    raise ShiftRuleError("generator spectrum admits no two- or four-term shift rule")


def _slot_gate(objective, slot: int) -> int:
    for index, gate in enumerate(objective.gates):
        if slot in gate.slots:
            return index
    raise ValidationError(f"no gate is bound to parameter slot {slot}")


def shift_gradient(objective, values: np.ndarray, slot: int, rule: ShiftRule,
                   elide_gate: bool = False) -> float:
    """
    Derivative of the objective along one slot from shifted evaluations.

    With elide_gate, the first shift is set to alpha = -theta so that one
    evaluation runs at U(0) = I; that evaluation uses the circuit with the
    gate removed.

    Raises:
        ShiftRuleError: If the rule class does not match the gate's generator,
            or elision is requested at theta in pi*Z
    """
    values = np.asarray(values, dtype=float)
    index = _slot_gate(objective, slot)
    gate = objective.gates[index]
    report = classify_generator(gate.kind)
    if report.rule_class is RuleClass.UNSUPPORTED:
        raise ShiftRuleError(f"{gate.kind.value} generator admits no shift rule")
    if report.rule_class is not rule.rule_class:
        raise ShiftRuleError(
            f"{gate.kind.value} needs a {report.rule_class.value} rule, got {rule.rule_class.value}"
        )

    a = report.scale_a
    theta = float(values[slot])
    if elide_gate:
        if _is_multiple_of_pi(a * theta):
            raise ShiftRuleError(f"cannot elide a gate at theta={theta} (multiple of pi)")
        if rule.rule_class is RuleClass.TWO_TERM:
            rule = make_shift_rule(RuleClass.TWO_TERM, alpha=-a * theta)
        else:
            rule = make_shift_rule(RuleClass.FOUR_TERM, alpha=-a * theta, beta=rule.beta)
        elided = [g for i, g in enumerate(objective.gates) if i != index]

    evaluations = []
    for position, shift in enumerate(rule.shifts):
        shifted = values.copy()
        shifted[slot] = theta + shift / a
        if elide_gate and position == 0:
            evaluations.append(objective.evaluate_gates(elided, shifted))
        else:
            evaluations.append(objective.evaluate_gates(objective.gates, shifted))
    return a * rule.combine(evaluations)


def shot_noise_variance(rule: ShiftRule, V: float, N: float) -> Tuple[float, List[float]]:
    """
    Variance of a shift-rule estimate under constant per-evaluation variance V
    with N shots split proportionally to |c_i|.

    sigma^2 = V (sum_i |c_i|)^2 / N, which is V / (N sin^2 alpha) for the
    two-term rule and 4 (d1 + d2)^2 V / N for the four-term rule.

    Raises:
        ValidationError: If N <= 0 or V < 0
    """
    if N <= 0:
        raise ValidationError("shot budget must be positive")
    if V < 0:
        raise ValidationError("variance must be non-negative")
    weights = np.abs(rule.coefficients)
    total = float(np.sum(weights))
    allocation = [float(N * w / total) for w in weights]
    return V * total ** 2 / N, allocation


def biased_prefactor(grad_estimate: float, V: float, N: float) -> float:
    """
    Scale factor lambda* = 1 / (1 + V / (N g^2)) minimizing the mean-squared
    error of a gradient estimate g; 0 when g is exactly 0.

    Raises:
        ValidationError: If N <= 0
    """
    if N <= 0:
        raise ValidationError("shot budget must be positive")
    if grad_estimate == 0.0:
        return 0.0
    return 1.0 / (1.0 + V / (N * grad_estimate ** 2))
