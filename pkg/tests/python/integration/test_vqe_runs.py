"""
End-to-end optimization runs on model Hamiltonians and Haar-random irrep states.
"""

import numpy as np
import pytest

from src.python.config.settings import OptimizerConfig
from src.python.fabric import FabricSpec, initialized_fabric, parameter_count
from src.python.hamiltonian.fci import fci_ground_state, seniority_zero_ground_state
from src.python.hamiltonian.models import hubbard_chain, pairing
from src.python.symmetry import IrrepKey
from src.python.symmetry.irreps import irrep_dimension
from src.python.symmetry.operators import number_operator, s_squared_pauli
from src.python.vqe import HaarProblem, Objective, SweepProblem, depth_sweep, haar_run, minimize
from src.python.vqe.sweeps import energy_reference

pytestmark = pytest.mark.integration

SINGLET_DIMER = IrrepKey(2, 1, 1, 0)


def _energy_run(kind, M, layers, hamiltonian, key, strategy="A", config=None):
    spec, init = initialized_fabric(FabricSpec(kind, M, layers), strategy)
    objective = Objective.energy(spec, hamiltonian, energy_reference(spec, key))
    params, trace = minimize(objective, init, config, keep_params=True)
    return objective, params, trace


class TestModelEnergies:
    """Test cases for ground-state energies of small models."""

    def test_hubbard_dimer(self):
        """Test (U - sqrt(U^2 + 16 t^2)) / 2 for t=1, U=4."""
        _, _, trace = _energy_run("Q", 2, 3, hubbard_chain(2), SINGLET_DIMER)
        assert trace.final_value == pytest.approx((4.0 - np.sqrt(32.0)) / 2.0, abs=1e-9)

    def test_hopping_dimer(self):
        """Test the free dimer reaches -2t."""
        _, _, trace = _energy_run("Q", 2, 3, hubbard_chain(2, t=1.5, U=0.0), SINGLET_DIMER)
        assert trace.final_value == pytest.approx(-3.0, abs=1e-9)

    def test_px_only_matches_seniority_zero(self):
        """Test pair exchanges alone solve the pairing model."""
        H = pairing(3, G=0.5)
        expected, _ = seniority_zero_ground_state(H, 3, 1)
        _, _, trace = _energy_run("PX_only", 3, 4, H, IrrepKey(3, 1, 1, 0))
        assert trace.final_value == pytest.approx(expected, abs=1e-9)

    def test_orbital_rotations_alone_fall_short(self):
        """Test OR_only stays above Q at equal parameter count."""
        H = hubbard_chain(3)
        key = IrrepKey(3, 1, 1, 0)
        fci, _ = fci_ground_state(H, key)
        _, _, q_trace = _energy_run("Q", 3, 6, H, key)
        or_spec = FabricSpec("OR_only", 3, 12)
        assert parameter_count(or_spec) == parameter_count(FabricSpec("Q", 3, 6))
        _, _, or_trace = _energy_run("OR_only", 3, 12, H, key)
        assert or_trace.final_value - fci > q_trace.final_value - fci
        assert or_trace.final_value - fci > 1e-3

    def test_symmetry_retained_along_trace(self):
        """Test every traced epoch stays in the reference irrep."""
        H = hubbard_chain(3)
        key = IrrepKey(3, 1, 1, 0)
        objective, _, trace = _energy_run("Q", 3, 4, H, key, config=OptimizerConfig(max_epochs=30))
        n_alpha = number_operator(3, "alpha").to_sparse(6)
        n_beta = number_operator(3, "beta").to_sparse(6)
        s2 = s_squared_pauli(3).to_sparse(6)
        fci, _ = fci_ground_state(H, key)
        for record in trace.records:
            psi = objective.state(record.params).amplitudes
            assert psi @ (n_alpha @ psi) == pytest.approx(1.0, abs=1e-12)
            assert psi @ (n_beta @ psi) == pytest.approx(1.0, abs=1e-12)
            assert psi @ (s2 @ psi) == pytest.approx(0.0, abs=1e-9)
            assert record.value >= fci - 1e-10


class TestDepthSweep:
    """Test cases for energy error against fabric depth."""

    @pytest.mark.slow
    def test_error_drops_with_depth(self):
        """Test the deepest fabric beats the shallowest and reaches FCI."""
        problem = SweepProblem(FabricSpec("Q", 3, 1), hubbard_chain(3), IrrepKey(3, 1, 1, 0))
        rows = depth_sweep(problem, [1, 3, 6], strategies=("A",))
        errors = [row.error for row in rows]
        assert len(rows) == 3
        assert errors[-1] <= errors[0] + 1e-12
        assert rows[-1].n_params >= irrep_dimension(problem.key)
        assert errors[-1] < 1e-8
        assert all(row.circuit_depth > 0 for row in rows)


class TestHaarOverlap:
    """Test cases for overlap optimization between Haar-random irrep states."""

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_universal_above_dimension(self, seed):
        """Test 30 parameters cover the 20-dimensional (2,2,0) irrep of M=4."""
        key = IrrepKey(4, 2, 2, 0)
        spec = FabricSpec("Q", 4, 10)
        assert parameter_count(spec) >= 1.5 * irrep_dimension(key)
        result = haar_run(HaarProblem(spec, key), seed, OptimizerConfig(max_epochs=2000))
        assert result.infidelity < 1e-8

    @pytest.mark.slow
    def test_flatlines_below_dimension(self):
        """Test a third of the dimension in parameters cannot reach the target."""
        key = IrrepKey(4, 2, 2, 0)
        spec = FabricSpec("Q", 4, 2)
        assert parameter_count(spec) <= irrep_dimension(key) / 3
        result = haar_run(HaarProblem(spec, key), 0, OptimizerConfig(max_epochs=2000))
        assert result.infidelity > 1e-4

    @pytest.mark.slow
    def test_q_fabric_stalls_on_edge_case(self):
        """Test the (0,2,2) irrep of M=4 is out of reach of Q fabrics."""
        key = IrrepKey(4, 0, 2, 2)
        spec = FabricSpec("Q", 4, 12)
        results = [haar_run(HaarProblem(spec, key), seed, OptimizerConfig(max_epochs=1000)) for seed in range(3)]
        assert min(result.infidelity for result in results) > 1e-3

    @pytest.mark.slow
    def test_f_fabric_stalls_on_beta_only_irrep(self):
        """Test F elements reduce to beta orbital rotations without alpha electrons."""
        key = IrrepKey(4, 0, 2, 2)
        spec = FabricSpec("F", 4, 8)
        results = [haar_run(HaarProblem(spec, key), seed, OptimizerConfig(max_epochs=1000)) for seed in range(3)]
        assert min(result.infidelity for result in results) > 1e-3

    @pytest.mark.slow
    def test_f_fabric_universal(self):
        """Test F fabrics cover the (2,2,0) irrep of M=4."""
        key = IrrepKey(4, 2, 2, 0)
        spec = FabricSpec("F", 4, 6)
        result = haar_run(HaarProblem(spec, key), 0, OptimizerConfig(max_epochs=2000))
        assert result.infidelity < 1e-8
