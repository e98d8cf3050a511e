"""
Monte-Carlo model of shot noise on shift-rule gradient estimates.

Each shifted evaluation f(theta + s_i) measured with N_i shots is modelled
as the exact value plus Gaussian noise of variance V / N_i, with V
independent of theta.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from ..core.exceptions import ValidationError
from .shift_rules import ShiftRule, biased_prefactor, shot_noise_variance

logger = logging.getLogger(__name__)


@dataclass
class NoiseStudy:
    """Summary of repeated noisy gradient estimates."""
    exact: float
    mean: float
    variance: float
    predicted_variance: float
    mse_unbiased: float
    mse_scaled: float
    trials: int

    def to_dict(self) -> Dict[str, float]:
        return {
            "exact": self.exact,
            "mean": self.mean,
            "variance": self.variance,
            "predicted_variance": self.predicted_variance,
            "mse_unbiased": self.mse_unbiased,
            "mse_scaled": self.mse_scaled,
            "trials": self.trials,
        }


def noisy_estimates(rule: ShiftRule, f: Callable[[float], float], theta: float,
                    V: float, N: float, trials: int, seed: int) -> np.ndarray:
    """
    Shift-rule estimates of f'(theta) under the Gaussian shot-noise model
    with the optimal shot allocation.
    """
    if trials < 1:
        raise ValidationError("trials must be positive")
    _, allocation = shot_noise_variance(rule, V, N)
    rng = np.random.Generator(np.random.Philox(seed))
    exact_terms = np.array([f(theta + shift) for shift in rule.shifts])
    noise = rng.standard_normal((trials, len(allocation))) * np.sqrt(V / np.asarray(allocation))
    return (exact_terms + noise) @ np.asarray(rule.coefficients)


def noise_study(rule: ShiftRule, f: Callable[[float], float], theta: float, exact: float,
                V: float, N: float, trials: int = 10_000, seed: int = 0) -> NoiseStudy:
    """
    Empirical variance and mean-squared errors of noisy estimates, with and
    without the bias prefactor lambda* at the exact gradient.
    """
    estimates = noisy_estimates(rule, f, theta, V, N, trials, seed)
    predicted, _ = shot_noise_variance(rule, V, N)
    sigma2_per_shot = predicted * N
    scaled = biased_prefactor(exact, sigma2_per_shot, N) * estimates
    study = NoiseStudy(
        exact=exact,
        mean=float(np.mean(estimates)),
        variance=float(np.var(estimates, ddof=1)),
        predicted_variance=predicted,
        mse_unbiased=float(np.mean((estimates - exact) ** 2)),
        mse_scaled=float(np.mean((scaled - exact) ** 2)),
        trials=trials,
    )
    logger.debug(f"Noise study: {study.to_dict()}")
    return study
