"""
Depth sweeps, Haar-random overlap studies and amplitude spectra.

Each sweep point is one independent optimization; points run through the
batch runner and come back in submission order.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.settings import OptimizerConfig
from ..core.exceptions import ValidationError
from ..fabric.initialization import adjusted_reference_state, initialized_fabric, random_params, reference_state
from ..fabric.spec import FabricSpec, ParamVector, Strategy
from ..fabric.tessellation import expand, parameter_count
from ..gates.circuit import circuit_stats
from ..hamiltonian.fci import fci_ground_state
from ..sim.pauli import PauliSum
from ..sim.statevector import StateVector
from ..symmetry.irreps import IrrepKey, haar_random_irrep_state, irrep_dimension
from ..symmetry.operators import seniority
from .batch import run_jobs
from .objective import Objective
from .optimizer import ConvergenceTrace, minimize

logger = logging.getLogger(__name__)

RANDOM_INIT = "random"
VARIATIONAL_SLACK = 1e-10


@dataclass(frozen=True)
class SweepProblem:
    """
    An energy problem swept over fabric depth.

    `fabric` fixes kind, width, Pi element and gate order; its layer count is
    replaced at every sweep point. `perturbation` adds seeded Gaussian noise
    of that scale to the strategy's initial parameters.
    """
    fabric: FabricSpec
    hamiltonian: PauliSum
    key: IrrepKey
    perturbation: float = 0.0

    def validate(self) -> None:
        """
        Raises:
            ValidationError: If the fabric width does not match the irrep or the
                reference determinant lies outside the irrep
        """
        self.key.validate()
        if self.fabric.n_qubits != 2 * self.key.M:
            raise ValidationError(
                f"fabric acts on {self.fabric.n_qubits} qubits, irrep {self.key} needs {2 * self.key.M}"
            )
        if self.key.S != abs(self.key.n_alpha - self.key.n_beta):
            raise ValidationError(
                f"aufbau reference has S={abs(self.key.n_alpha - self.key.n_beta)}, irrep {self.key} needs S={self.key.S}"
            )
        if self.perturbation < 0:
            raise ValidationError("perturbation must be non-negative")


@dataclass
class SweepRow:
    """One (depth, strategy, seed) point of a depth sweep."""
    layers: int
    n_params: int
    circuit_depth: int
    two_qubit_count: int
    strategy: str
    seed: int
    energy: float
    fci_energy: float
    error: float
    epochs: int
    evaluations: int
    status: str
    digest: str

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def initial_point(spec: FabricSpec, strategy: str, seed: int,
                  perturbation: float) -> Tuple[FabricSpec, ParamVector]:
    """Spec and starting parameters for strategy A, B or random."""
    if strategy == RANDOM_INIT:
        return spec, random_params(spec, seed)
    spec, params = initialized_fabric(spec, Strategy(strategy))
    if perturbation:
        rng = np.random.Generator(np.random.Philox(seed))
        params = params.with_values(params.values + perturbation * rng.standard_normal(len(params)))
    return spec, params


def energy_reference(spec: FabricSpec, key: IrrepKey) -> StateVector:
    """Aufbau determinant as seen through the zero-parameter fabric."""
    if spec.is_fermionic:
        return adjusted_reference_state(spec, key.n_alpha, key.n_beta)
    return reference_state(key.M, key.n_alpha, key.n_beta)


def _sweep_point(task: Tuple[SweepProblem, int, str, int, OptimizerConfig, float]) -> SweepRow:
    problem, layers, strategy, seed, config, fci_energy = task
    spec, init = initial_point(problem.fabric.with_layers(layers), strategy, seed, problem.perturbation)
    objective = Objective.energy(spec, problem.hamiltonian, energy_reference(spec, problem.key))
    _, trace = minimize(objective, init, config, seed=seed)
    stats = circuit_stats(expand(spec), decompose=True)
    energy = trace.final_value
    if energy < fci_energy - VARIATIONAL_SLACK:
        logger.warning(f"energy {energy:.12f} below FCI {fci_energy:.12f} at {layers} layers")
    return SweepRow(
        layers=layers,
        n_params=parameter_count(spec),
        circuit_depth=stats.depth,
        two_qubit_count=stats.two_qubit_count,
        strategy=strategy,
        seed=seed,
        energy=energy,
        fci_energy=fci_energy,
        error=energy - fci_energy,
        epochs=trace.epochs,
        evaluations=trace.n_evaluations,
        status=trace.status.value,
        digest=trace.digest,
    )


def depth_sweep(problem: SweepProblem, depths: Sequence[int], strategies: Sequence[str] = ("A", "B"),
                seeds: Sequence[int] = (0,), config: Optional[OptimizerConfig] = None,
                jobs: int = 1) -> List[SweepRow]:
    """
    One energy minimization per (depth, strategy, seed), scored against FCI.

    Strategies are 'A', 'B' or 'random' (uniform parameters, the only choice
    for SO4 and Hamming-weight fabrics). Failed points are logged and left
    out; stalls are recorded in the rows.

    Raises:
        ValidationError: If the problem is inconsistent
    """
    problem.validate()
    config = config or OptimizerConfig()
    unknown = [s for s in strategies if s != RANDOM_INIT and s not in {x.value for x in Strategy}]
    if unknown:
        raise ValidationError(f"unknown initialization strategies {unknown}")
    fci_energy, _ = fci_ground_state(problem.hamiltonian, problem.key)
    logger.info(
        f"Depth sweep {problem.fabric.kind.value} on {problem.key}: "
        f"depths={list(depths)} strategies={list(strategies)} seeds={list(seeds)}, E_FCI={fci_energy:.12f}"
    )
    tasks = [(problem, layers, str(strategy), seed, config, fci_energy)
             for layers in depths for strategy in strategies for seed in seeds]
    batch = run_jobs(_sweep_point, tasks, jobs)
    return [row for row in batch.results if row is not None]


@dataclass(frozen=True)
class HaarProblem:
    """Overlap optimization between two Haar-random states of one irrep."""
    fabric: FabricSpec
    key: IrrepKey

    def validate(self) -> None:
        self.key.validate()
        if self.fabric.n_qubits != 2 * self.key.M:
            raise ValidationError(
                f"fabric acts on {self.fabric.n_qubits} qubits, irrep {self.key} needs {2 * self.key.M}"
            )


@dataclass
class HaarResult:
    seed: int
    n_params: int
    dimension: int
    infidelity: float
    trace: ConvergenceTrace = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "n_params": self.n_params,
            "dimension": self.dimension,
            "infidelity": self.infidelity,
            "epochs": self.trace.epochs,
            "status": self.trace.status.value,
            "digest": self.trace.digest,
        }


def haar_states(key: IrrepKey, seed: int) -> Tuple[StateVector, StateVector]:
    """Target |A> and reference |B> drawn from the Philox streams 2*seed and 2*seed+1."""
    return haar_random_irrep_state(key, 2 * seed), haar_random_irrep_state(key, 2 * seed + 1)


def haar_run(problem: HaarProblem, seed: int, config: Optional[OptimizerConfig] = None,
             keep_params: bool = False) -> HaarResult:
    """
    Minimize 1 - <A|U|B>^2 from uniform random parameters.

    Raises:
        ValidationError: If the fabric does not fit the irrep
    """
    problem.validate()
    target, start = haar_states(problem.key, seed)
    objective = Objective.overlap(problem.fabric, target, start)
    params, trace = minimize(objective, random_params(problem.fabric, seed), config, seed=seed,
                             keep_params=keep_params)
    return HaarResult(seed, len(params), irrep_dimension(problem.key), trace.final_value, trace)


def _haar_point(task: Tuple[HaarProblem, int, OptimizerConfig]) -> HaarResult:
    problem, seed, config = task
    return haar_run(problem, seed, config)


def haar_study(problem: HaarProblem, seeds: Sequence[int], config: Optional[OptimizerConfig] = None,
               jobs: int = 1) -> List[HaarResult]:
    """haar_run over several seeds; results in seed order."""
    problem.validate()
    config = config or OptimizerConfig()
    logger.info(
        f"Haar study {problem.fabric.kind.value} x{problem.fabric.n_layers} on {problem.key} "
        f"(dimension {irrep_dimension(problem.key)}), seeds={list(seeds)}"
    )
    batch = run_jobs(_haar_point, [(problem, seed, config) for seed in seeds], jobs)
    return [result for result in batch.results if result is not None]


class SpectrumOrder(str, Enum):
    SORTED_DESC = "sorted_desc"
    FCI_CONSISTENT = "fci_consistent"


@dataclass
class SpectrumEntry:
    index: int
    bitstring: str
    probability: float
    seniority: int
    reference_probability: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        row = {"index": self.index, "bitstring": self.bitstring,
               "probability": self.probability, "seniority": self.seniority}
        if self.reference_probability is not None:
            row["reference_probability"] = self.reference_probability
        return row


def amplitude_spectrum(state: StateVector, order: str = SpectrumOrder.SORTED_DESC,
                       reference: Optional[StateVector] = None,
                       cutoff: float = 1e-14) -> List[SpectrumEntry]:
    """
    Basis-state probabilities annotated with seniority.

    sorted_desc lists the state's own support by descending probability.
    fci_consistent follows the reference state's descending probabilities
    and pairs both probabilities per index; indices only the state populates
    come after. Ties break by ascending index. Entries below `cutoff` in
    both states are dropped.

    Raises:
        ValidationError: For unknown orders, or fci_consistent without a
            matching reference
    """
    try:
        order = SpectrumOrder(order)
    except ValueError as e:
        raise ValidationError(f"unknown spectrum order {order!r}") from e
    n = state.n_qubits
    M = n // 2
    probabilities = state.amplitudes ** 2

    if order is SpectrumOrder.SORTED_DESC:
        ranking = np.lexsort((np.arange(probabilities.shape[0]), -probabilities))
        keep = [int(i) for i in ranking if probabilities[i] > cutoff]
        return [SpectrumEntry(i, format(i, f"0{n}b"), float(probabilities[i]), seniority(i, M)) for i in keep]

    if reference is None or reference.n_qubits != n:
        raise ValidationError("fci_consistent ordering needs a reference state of the same width")
    ref_probabilities = reference.amplitudes ** 2
    ranking = np.lexsort((np.arange(probabilities.shape[0]), -probabilities, -ref_probabilities))
    return [
        SpectrumEntry(int(i), format(int(i), f"0{n}b"), float(probabilities[i]), seniority(int(i), M),
                      float(ref_probabilities[i]))
        for i in ranking
        if probabilities[i] > cutoff or ref_probabilities[i] > cutoff
    ]
