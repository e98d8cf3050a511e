"""
Unit tests for adjoint gradients, generator classes, shift rules and the shot-noise model.
"""

import numpy as np
import pytest

from src.python.core.exceptions import ShiftRuleError, ValidationError
from src.python.fabric import FabricSpec, random_params, reference_state
from src.python.gates.catalog import GateName
from src.python.gradients import (
    RuleClass,
    ShiftRule,
    analytic_gradient,
    biased_prefactor,
    classify_catalog,
    classify_generator,
    finite_difference_gradient,
    four_term_residuals,
    make_shift_rule,
    noise_study,
    noisy_estimates,
    shift_gradient,
    shot_noise_variance,
    solve_four_term,
    value_and_gradient,
)
from src.python.gradients.shift_rules import FOUR_TERM_OPTIMAL_D1, FOUR_TERM_OPTIMAL_D2
from src.python.hamiltonian.models import hubbard_chain
from src.python.sim.statevector import StateVector
from src.python.symmetry import IrrepKey, haar_random_irrep_state
from src.python.vqe.objective import Objective, evaluate

SHIFT_ANGLES = [np.pi / 2, np.pi / 4, 1.0, 2.0, 3 * np.pi / 4]


def _energy_objective(kind: str, pi_gate: str = "identity", M: int = 3, layers: int = 3) -> Objective:
    spec = FabricSpec(kind, M, layers, pi_gate=pi_gate)
    return Objective.energy(spec, hubbard_chain(M), reference_state(M, 1, 1))


def _cos_mixture(theta: float) -> float:
    """Expectation-like function with frequencies 1/2 and 1."""
    return 0.3 * np.cos(theta / 2) + 0.5 * np.sin(theta) + 0.2


def _cos_mixture_derivative(theta: float) -> float:
    return -0.15 * np.sin(theta / 2) + 0.5 * np.cos(theta)


class TestAdjointGradient:
    """Test cases for the forward/backward statevector gradient."""

    @pytest.mark.parametrize("kind,pi_gate", [
        ("Q", "identity"), ("Q", "OR_pi"), ("Q", "OFSWAP"), ("F", "identity"),
        ("F_prime", "identity"), ("PX_only", "identity"),
    ])
    def test_energy_gradient_matches_finite_differences(self, kind, pi_gate):
        """Test adjoint gradients of fermionic fabrics against central differences."""
        objective = _energy_objective(kind, pi_gate)
        values = random_params(objective.fabric, 21).values
        np.testing.assert_allclose(
            analytic_gradient(objective, values),
            finite_difference_gradient(objective, values),
            atol=1e-7,
        )

    def test_overlap_gradient_matches_finite_differences(self):
        """Test the infidelity cotangent."""
        key = IrrepKey(3, 2, 1, 1)
        spec = FabricSpec("Q", 3, 4, pi_gate="OR_pi")
        objective = Objective.overlap(spec, haar_random_irrep_state(key, 1), reference_state(3, 2, 1))
        values = random_params(spec, 2).values
        np.testing.assert_allclose(
            analytic_gradient(objective, values),
            finite_difference_gradient(objective, values),
            atol=1e-7,
        )

    @pytest.mark.parametrize("kind", ["SO4", "HammingGivens", "Hamming8"])
    def test_brick_fabric_gradients(self, kind):
        """Test multi-parameter and Hamming-weight gates."""
        spec = FabricSpec(kind, 4, 3)
        rng = np.random.Generator(np.random.Philox(5))
        target = StateVector.from_amplitudes(rng.standard_normal(16), normalize=True)
        objective = Objective.overlap(spec, target, StateVector.basis(4, 0b0011))
        values = random_params(spec, 8).values
        np.testing.assert_allclose(
            analytic_gradient(objective, values),
            finite_difference_gradient(objective, values),
            atol=1e-7,
        )

    def test_value_matches_evaluation(self):
        """Test the forward sweep value."""
        objective = _energy_objective("Q", "OR_pi")
        values = random_params(objective.fabric, 3).values
        value, gradient = value_and_gradient(objective, values)
        assert value == pytest.approx(evaluate(objective, values), abs=1e-12)
        assert gradient.shape == (objective.n_params,)


class TestGeneratorClasses:
    """Test cases for generator spectra."""

    @pytest.mark.parametrize("kind,rule_class", [
        (GateName.RY, RuleClass.TWO_TERM),
        (GateName.G, RuleClass.FOUR_TERM),
        (GateName.CRY, RuleClass.FOUR_TERM),
        (GateName.QNP_PX, RuleClass.FOUR_TERM),
        (GateName.HAMMING_GIVENS, RuleClass.FOUR_TERM),
        (GateName.QNP_OR, RuleClass.UNSUPPORTED),
    ])
    def test_rule_classes(self, kind, rule_class):
        """Test spectra map to the expected rule families."""
        report = classify_generator(kind)
        assert report.rule_class is rule_class
        assert report.scale_a == pytest.approx(2.0 if kind is GateName.QNP_OR else 1.0)

    def test_spectrum_is_centered(self):
        """Test the reported spectrum of the PX generator."""
        report = classify_generator("QNP_PX")
        assert report.shift_c == pytest.approx(0.0)
        assert report.to_dict()["eigenvalues"] == [-1.0, 0.0, 1.0]

    @pytest.mark.parametrize("kind", ["F", "Q", "OFSWAP", "CNOT"])
    def test_non_single_parameter_kinds(self, kind):
        """Test shift rules need exactly one parameter."""
        with pytest.raises(ShiftRuleError, match="exactly 1"):
            classify_generator(kind)

    def test_catalog_covers_single_parameter_kinds(self):
        """Test every one-parameter kind is classified."""
        kinds = {report.kind for report in classify_catalog()}
        assert GateName.RY in kinds
        assert GateName.QNP_OR in kinds
        assert GateName.F not in kinds


class TestShiftRules:
    """Test cases for shift rule construction and exactness."""

    def test_four_term_symmetric_coefficients(self):
        """Test alpha = pi/2, beta = pi."""
        rule = make_shift_rule("four_term")
        assert rule.d1 == pytest.approx(0.5)
        assert rule.d2 == pytest.approx((np.sqrt(2.0) - 1.0) / 4.0)
        assert max(abs(r) for r in four_term_residuals(rule.d1, rule.d2, rule.alpha, rule.beta)) < 1e-12

    def test_variance_optimal_four_term(self):
        """Test the minimum-variance angles and coefficients."""
        rule = make_shift_rule("four_term", variance_optimal=True)
        assert rule.alpha == pytest.approx(np.pi / 2)
        assert rule.beta == pytest.approx(3 * np.pi / 2)
        assert rule.d1 == pytest.approx(FOUR_TERM_OPTIMAL_D1)
        assert rule.d2 == pytest.approx(FOUR_TERM_OPTIMAL_D2)
        assert rule.d1 + rule.d2 == pytest.approx(0.5)

    @pytest.mark.parametrize("alpha,beta", [(np.pi / 2, np.pi), (0.7, 2.1), (1.3, 2.9)])
    def test_solve_four_term_satisfies_conditions(self, alpha, beta):
        """Test solved coefficients for generic angles."""
        d1, d2 = solve_four_term(alpha, beta)
        assert max(abs(r) for r in four_term_residuals(d1, d2, alpha, beta)) < 1e-12

    @pytest.mark.parametrize("alpha", SHIFT_ANGLES)
    def test_two_term_on_trig_function(self, alpha):
        """Test the two-term rule differentiates cos exactly."""
        rule = make_shift_rule("two_term", alpha=alpha)
        theta = 0.4
        evaluations = [np.cos(theta + shift) for shift in rule.shifts]
        assert rule.combine(evaluations) == pytest.approx(-np.sin(theta), abs=1e-12)

    def test_four_term_on_half_frequencies(self):
        """Test the four-term rule covers frequencies 1/2 and 1."""
        rule = make_shift_rule("four_term", alpha=0.7, beta=2.1)
        theta = -1.1
        evaluations = [_cos_mixture(theta + shift) for shift in rule.shifts]
        assert rule.combine(evaluations) == pytest.approx(_cos_mixture_derivative(theta), abs=1e-12)

    @pytest.mark.parametrize("variance_optimal,alpha,beta", [
        (False, np.pi / 2, None), (True, np.pi / 2, None), (False, 0.7, 2.1),
    ])
    def test_four_term_matches_adjoint_on_px(self, variance_optimal, alpha, beta):
        """Test four-term shift gradients of every PX slot."""
        objective = _energy_objective("PX_only")
        values = random_params(objective.fabric, 13).values
        exact = analytic_gradient(objective, values)
        rule = make_shift_rule("four_term", alpha=alpha, beta=beta, variance_optimal=variance_optimal)
        for slot in range(objective.n_params):
            assert shift_gradient(objective, values, slot, rule) == pytest.approx(exact[slot], abs=1e-9)

    @pytest.mark.parametrize("alpha", SHIFT_ANGLES)
    def test_two_term_matches_adjoint_on_decomposed_ry(self, alpha):
        """Test two-term shift gradients on the RY slots of a decomposed fabric."""
        objective = _energy_objective("Q", "OR_pi", layers=2)
        clone, expanded = objective.decomposed(random_params(objective.fabric, 4))
        assert evaluate(clone, expanded) == pytest.approx(evaluate(objective, random_params(objective.fabric, 4)),
                                                          abs=1e-10)
        exact = analytic_gradient(clone, expanded)
        ry_slots = [gate.param_slot for gate in clone.gates if gate.kind is GateName.RY]
        assert ry_slots
        rule = make_shift_rule("two_term", alpha=alpha)
        for slot in ry_slots[:6]:
            assert shift_gradient(clone, expanded, slot, rule) == pytest.approx(exact[slot], abs=1e-9)

    def test_two_term_elision(self, mocker):
        """Test the elided evaluation drops the gate and keeps the derivative exact."""
        objective = _energy_objective("Q", "OR_pi", layers=2)
        clone, expanded = objective.decomposed(random_params(objective.fabric, 6))
        exact = analytic_gradient(clone, expanded)
        slot = next(gate.param_slot for gate in clone.gates
                    if gate.kind is GateName.RY and abs(np.sin(expanded[gate.param_slot])) > 0.1)
        spy = mocker.spy(clone, "evaluate_gates")
        estimate = shift_gradient(clone, expanded, slot, make_shift_rule("two_term"), elide_gate=True)
        assert estimate == pytest.approx(exact[slot], abs=1e-10)
        assert len(spy.call_args_list) == 2
        assert len(spy.call_args_list[0].args[0]) == len(clone.gates) - 1
        assert len(spy.call_args_list[1].args[0]) == len(clone.gates)

    def test_four_term_elision(self):
        """Test elision with the four-term rule."""
        objective = _energy_objective("PX_only")
        values = random_params(objective.fabric, 9).values
        exact = analytic_gradient(objective, values)
        slot = int(np.argmax(np.abs(np.sin(values)) * (np.abs(values) < 2.5)))
        estimate = shift_gradient(objective, values, slot, make_shift_rule("four_term"), elide_gate=True)
        assert estimate == pytest.approx(exact[slot], abs=1e-9)


class TestShiftRuleErrors:
    """Test cases for invalid shift rules and requests."""

    def test_rule_family_mismatch(self):
        """Test a two-term rule on a four-term generator."""
        objective = _energy_objective("PX_only")
        values = random_params(objective.fabric, 1).values
        with pytest.raises(ShiftRuleError, match="needs a four_term rule"):
            shift_gradient(objective, values, 0, make_shift_rule("two_term"))

    def test_unsupported_generator(self):
        """Test the orbital rotation slot of a Q gate has no rule."""
        objective = _energy_objective("Q")
        values = random_params(objective.fabric, 1).values
        with pytest.raises(ShiftRuleError, match="admits no shift rule"):
            shift_gradient(objective, values, 1, make_shift_rule("four_term"))

    def test_unbound_slot(self):
        """Test slots beyond the fabric."""
        objective = _energy_objective("PX_only")
        values = random_params(objective.fabric, 1).values
        with pytest.raises(ValidationError, match="no gate is bound"):
            shift_gradient(objective, values, 999, make_shift_rule("four_term"))

    def test_elision_at_multiple_of_pi(self):
        """Test elision needs a non-trivial angle."""
        objective = _energy_objective("PX_only")
        values = np.zeros(objective.n_params)
        with pytest.raises(ShiftRuleError, match="cannot elide"):
            shift_gradient(objective, values, 0, make_shift_rule("four_term"), elide_gate=True)

    @pytest.mark.parametrize("rule_class,kwargs,message", [
        ("two_term", {"alpha": np.pi}, "multiple of pi"),
        ("two_term", {"alpha": 0.0}, "multiple of pi"),
        ("four_term", {"alpha": 1.0, "beta": 1.0}, "degenerate"),
        ("unsupported", {}, "admits no"),
        ("six_term", {}, "no shift rule family"),
    ])
    def test_invalid_rules(self, rule_class, kwargs, message):
        """Test degenerate angles and unknown families."""
        with pytest.raises(ShiftRuleError, match=message):
            make_shift_rule(rule_class, **kwargs)

    def test_inconsistent_coefficients(self):
        """Test hand-built four-term rules are checked."""
        with pytest.raises(ShiftRuleError, match="violate"):
            ShiftRule("four_term", ((1.0, 0.5), (-1.0, -0.5), (-1.0, 1.0), (1.0, -1.0)),
                      alpha=0.5, beta=1.0, d1=1.0, d2=1.0)

    def test_shift_rule_error_is_validation_error(self):
        """Test shift rule errors map to input errors."""
        assert issubclass(ShiftRuleError, ValidationError)


class TestShotNoise:
    """Test cases for the shot-noise variance model."""

    def test_two_term_variance(self):
        """Test V / (N sin^2 alpha) and the proportional allocation."""
        alpha = 1.0
        rule = make_shift_rule("two_term", alpha=alpha)
        variance, allocation = shot_noise_variance(rule, 2.0, 1000)
        assert variance == pytest.approx(2.0 / (1000 * np.sin(alpha) ** 2))
        assert allocation == pytest.approx([500.0, 500.0])

    def test_four_term_variance(self):
        """Test 4 (d1 + d2)^2 V / N."""
        rule = make_shift_rule("four_term")
        variance, allocation = shot_noise_variance(rule, 1.0, 1e5)
        assert variance == pytest.approx(4 * (rule.d1 + rule.d2) ** 2 / 1e5)
        assert sum(allocation) == pytest.approx(1e5)

    def test_optimal_rule_has_lowest_variance(self):
        """Test the variance-optimal four-term rule beats the symmetric one."""
        optimal, _ = shot_noise_variance(make_shift_rule("four_term", variance_optimal=True), 1.0, 1e4)
        symmetric, _ = shot_noise_variance(make_shift_rule("four_term"), 1.0, 1e4)
        assert optimal == pytest.approx(1e-4)
        assert optimal < symmetric

    @pytest.mark.parametrize("V,N", [(1.0, 0), (-1.0, 10)])
    def test_invalid_budgets(self, V, N):
        """Test shot budget and variance checks."""
        with pytest.raises(ValidationError):
            shot_noise_variance(make_shift_rule("two_term"), V, N)

    def test_biased_prefactor(self):
        """Test lambda* = 1 / (1 + V / (N g^2))."""
        assert biased_prefactor(0.1, 1.0, 100) == pytest.approx(0.5)
        assert biased_prefactor(0.0, 1.0, 100) == 0.0
        with pytest.raises(ValidationError):
            biased_prefactor(0.1, 1.0, 0)

    @pytest.mark.parametrize("rule_class,f,derivative", [
        ("two_term", np.cos, lambda t: -np.sin(t)),
        ("four_term", _cos_mixture, _cos_mixture_derivative),
    ])
    def test_empirical_variance_matches_model(self, rule_class, f, derivative):
        """Test unbiasedness and the predicted variance within 5%."""
        rule = make_shift_rule(rule_class)
        theta = 0.8
        study = noise_study(rule, f, theta, derivative(theta), V=1.0, N=1e5, trials=10_000, seed=42)
        assert study.variance == pytest.approx(study.predicted_variance, rel=0.05)
        assert study.mean == pytest.approx(derivative(theta), abs=5 * np.sqrt(study.predicted_variance / 100))
        assert study.trials == 10_000

    def test_bias_prefactor_reduces_error(self):
        """Test scaling by lambda* lowers the mean-squared error of small gradients."""
        rule = make_shift_rule("two_term")
        theta = 0.05
        study = noise_study(rule, np.cos, theta, -np.sin(theta), V=1.0, N=1000, trials=10_000, seed=7)
        assert study.mse_scaled < 0.9 * study.mse_unbiased

    def test_estimates_are_seeded(self):
        """Test the Philox stream makes estimates reproducible."""
        rule = make_shift_rule("two_term")
        a = noisy_estimates(rule, np.cos, 0.3, 1.0, 100, trials=5, seed=1)
        b = noisy_estimates(rule, np.cos, 0.3, 1.0, 100, trials=5, seed=1)
        np.testing.assert_array_equal(a, b)
        with pytest.raises(ValidationError, match="trials"):
            noisy_estimates(rule, np.cos, 0.3, 1.0, 100, trials=0, seed=1)
