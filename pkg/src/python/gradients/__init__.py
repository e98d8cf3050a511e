"""
Gradients Package

Adjoint gradients for statevector simulation, generator classification and
generalized parameter-shift rules with their shot-noise model.
"""

from .adjoint import analytic_gradient, finite_difference_gradient, value_and_gradient
from .generators import GeneratorReport, RuleClass, classify_catalog, classify_generator
from .shift_rules import (
    ShiftRule,
    biased_prefactor,
    four_term_residuals,
    make_shift_rule,
    shift_gradient,
    shot_noise_variance,
    solve_four_term,
)
from .shot_noise import NoiseStudy, noise_study, noisy_estimates

__all__ = [
    "GeneratorReport",
    "NoiseStudy",
    "RuleClass",
    "ShiftRule",
    "analytic_gradient",
    "biased_prefactor",
    "classify_catalog",
    "classify_generator",
    "finite_difference_gradient",
    "four_term_residuals",
    "make_shift_rule",
    "noise_study",
    "noisy_estimates",
    "shift_gradient",
    "shot_noise_variance",
    "solve_four_term",
    "value_and_gradient",
]
