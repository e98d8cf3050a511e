"""
Configuration settings for simulations, optimization and output.

Configuration is plain dataclasses with defaults, loaded from JSON
documents with strict key checking. There is no environment-based
configuration: every run is described by its config file and CLI flags.
"""

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Type, TypeVar, Union

from ..core.exceptions import ConfigurationError

T = TypeVar("T")


def build_dataclass(cls: Type[T], data: Optional[Mapping[str, Any]], where: str) -> T:
    """
    Build a flat dataclass from a mapping, rejecting unknown keys.

    Args:
        cls: Dataclass type to build
        data: Mapping of field names to values (None for defaults)
        where: Dotted config path used in error messages

    Returns:
        Dataclass instance

    Raises:
        ConfigurationError: If the mapping holds keys the dataclass lacks
    """
    if data is None:
        return cls()
    if not isinstance(data, Mapping):
        raise ConfigurationError(f"{where}: expected an object, got {type(data).__name__}")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(f"{where}: unknown keys {unknown}")
    return cls(**dict(data))


@dataclass
class SimulationConfig:
    """Configuration for statevector simulation."""
    tolerance: float = 1e-12  # probabilities below this are dropped from spectra
    max_qubits: int = 24


@dataclass
class OptimizerConfig:
    """Configuration for the L-BFGS driver."""
    history_size: int = 10
    g_tol: float = 1e-10
    f_tol: float = 0.0
    max_epochs: int = 10000
    n_restarts: int = 0
    restart_scale: float = 0.1  # std-dev of restart perturbations (radians)
    target: Optional[float] = None  # stop once the objective drops below this


@dataclass
class GradientConfig:
    """Configuration for gradient checks."""
    spectrum_tol: float = 1e-10
    fd_step: float = 1e-5


@dataclass
class OutputConfig:
    """Configuration for emitted tables."""
    format: str = "csv"
    out: Optional[str] = None


@dataclass
class LoggingConfig:
    """Configuration for logging."""
    level: str = "INFO"
    json_output: bool = False


@dataclass
class RunConfig:
    """Configuration for reproducibility and parallelism."""
    seed: int = 0
    jobs: int = 1


@dataclass
class Config:
    """Main configuration container."""
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    gradient: GradientConfig = field(default_factory=GradientConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    run: RunConfig = field(default_factory=RunConfig)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Config":
        """Create configuration from a nested mapping; unknown keys are rejected."""
        groups = {f.name: f.type for f in fields(cls)}
        unknown = sorted(set(data) - set(groups))
        if unknown:
            raise ConfigurationError(f"config: unknown sections {unknown}")
        config = cls(
            simulation=build_dataclass(SimulationConfig, data.get("simulation"), "simulation"),
            optimizer=build_dataclass(OptimizerConfig, data.get("optimizer"), "optimizer"),
            gradient=build_dataclass(GradientConfig, data.get("gradient"), "gradient"),
            output=build_dataclass(OutputConfig, data.get("output"), "output"),
            logging=build_dataclass(LoggingConfig, data.get("logging"), "logging"),
            run=build_dataclass(RunConfig, data.get("run"), "run"),
        )
        config.validate()
        return config

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "Config":
        """Create configuration from a JSON file."""
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"cannot read config {path}: {e}") from e
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def validate(self) -> None:
        """Validate configuration settings."""
        if self.simulation.tolerance <= 0:
            raise ConfigurationError("Simulation tolerance must be positive")

        if not 1 <= self.simulation.max_qubits <= 30:
            raise ConfigurationError("max_qubits must lie in [1, 30]")

        # Optimizer validation
        if self.optimizer.history_size < 1:
            raise ConfigurationError("history_size must be at least 1")

        if self.optimizer.g_tol < 0 or self.optimizer.f_tol < 0:
            raise ConfigurationError("Optimizer tolerances must be non-negative")

        if self.optimizer.max_epochs < 1:
            raise ConfigurationError("max_epochs must be at least 1")

        if self.optimizer.n_restarts < 0:
            raise ConfigurationError("n_restarts must be non-negative")

        if self.gradient.fd_step <= 0:
            raise ConfigurationError("Finite-difference step must be positive")

        if self.output.format not in ("csv", "json"):
            raise ConfigurationError(f"Unknown output format {self.output.format!r}")

        if self.logging.level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigurationError(f"Unknown log level {self.logging.level!r}")

        if self.run.jobs < 1:
            raise ConfigurationError("jobs must be at least 1")
