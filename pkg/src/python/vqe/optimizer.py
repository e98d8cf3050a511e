"""
L-BFGS driver with per-epoch convergence tracing.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from ..config.settings import OptimizerConfig
from ..fabric.spec import ParamVector, ensure_values
from ..gradients.adjoint import value_and_gradient
from ..monitoring.metrics import (
    MetricsTimer,
    last_objective_value,
    optimization_duration,
    optimizer_epochs,
    optimizer_runs,
)
from .objective import Objective

logger = logging.getLogger(__name__)

# L-BFGS-B status codes
_STATUS_CONVERGED = 0
_STATUS_MAX_ITERATIONS = 1
_STATUS_CALLBACK_STOP = 99


class TerminalStatus(str, Enum):
    CONVERGED = "converged"
    MAX_EPOCHS = "max_epochs"
    STALLED = "stalled"


def params_digest(values: np.ndarray) -> str:
    """First 16 hex characters of the SHA-256 of the float64 parameter bytes."""
    return hashlib.sha256(np.ascontiguousarray(values, dtype=np.float64).tobytes()).hexdigest()[:16]


@dataclass
class EpochRecord:
    epoch: int
    value: float
    grad_norm: float
    digest: str
    params: Optional[np.ndarray] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"epoch": self.epoch, "value": self.value, "grad_norm": self.grad_norm, "digest": self.digest}


@dataclass
class ConvergenceTrace:
    """Epoch-by-epoch optimizer history and terminal status."""
    records: List[EpochRecord] = field(default_factory=list)
    status: TerminalStatus = TerminalStatus.STALLED
    message: str = ""
    n_evaluations: int = 0
    duration: float = 0.0
    restart: int = 0

    @property
    def epochs(self) -> int:
        return self.records[-1].epoch if self.records else 0

    @property
    def final_value(self) -> float:
        return self.records[-1].value if self.records else float("nan")

    @property
    def digest(self) -> str:
        return self.records[-1].digest if self.records else ""

    def rows(self) -> List[Dict[str, Any]]:
        return [record.to_dict() for record in self.records]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "message": self.message,
            "epochs": self.epochs,
            "final_value": self.final_value,
            "n_evaluations": self.n_evaluations,
            "duration": self.duration,
            "restart": self.restart,
            "digest": self.digest,
            "records": self.rows(),
        }


class _TargetReached(StopIteration):
    pass


def _run_once(objective: Objective, start: np.ndarray, config: OptimizerConfig,
              keep_params: bool) -> Tuple[np.ndarray, ConvergenceTrace]:
    trace = ConvergenceTrace()
    cache: Dict[bytes, Tuple[float, np.ndarray]] = {}

    def fun(x: np.ndarray) -> Tuple[float, np.ndarray]:
        key = x.tobytes()
        if key not in cache:
            trace.n_evaluations += 1
            cache.clear()
            cache[key] = value_and_gradient(objective, x)
        value, gradient = cache[key]
        return value, gradient.copy()

    def record(epoch: int, x: np.ndarray) -> float:
        value, gradient = fun(x)
        trace.records.append(EpochRecord(
            epoch=epoch,
            value=value,
            grad_norm=float(np.max(np.abs(gradient), initial=0.0)),
            digest=params_digest(x),
            params=x.copy() if keep_params else None,
        ))
        return value

    record(0, start)

    def callback(xk: np.ndarray) -> None:
        value = record(len(trace.records), xk)
        optimizer_epochs.inc()
        logger.debug(f"epoch {trace.records[-1].epoch}: value={value:.12e} |g|={trace.records[-1].grad_norm:.3e}")
        if config.target is not None and value <= config.target:
            raise _TargetReached()

    with MetricsTimer(optimization_duration, {"objective": objective.kind.value}) as timer:
        result = scipy_minimize(
            fun,
            start,
            jac=True,
            method="L-BFGS-B",
            callback=callback,
            options={
                "maxcor": config.history_size,
                "gtol": config.g_tol,
                "ftol": config.f_tol,
                "maxiter": config.max_epochs,
                "maxfun": max(15000, 20 * config.max_epochs),
            },
        )
    trace.duration = timer.duration or 0.0
    trace.message = str(result.message)

    if result.status in (_STATUS_CONVERGED, _STATUS_CALLBACK_STOP):
        trace.status = TerminalStatus.CONVERGED
    elif result.status == _STATUS_MAX_ITERATIONS:
        trace.status = TerminalStatus.MAX_EPOCHS
    else:
        trace.status = TerminalStatus.STALLED

    x = np.asarray(result.x, dtype=float)
    if trace.records[-1].digest != params_digest(x):
        record(len(trace.records), x)
    return x, trace


def minimize(objective: Objective, init, config: Optional[OptimizerConfig] = None,
             seed: int = 0, keep_params: bool = False) -> Tuple[ParamVector, ConvergenceTrace]:
    """
    Minimize an objective with L-BFGS and exact adjoint gradients.

    Args:
        objective: Energy or overlap objective
        init: ParamVector or flat sequence matching the fabric
        config: Optimizer settings; n_restarts > 0 adds runs from
                Gaussian-perturbed starts (Philox stream seeded with `seed`)
        seed: Seed of the restart perturbations
        keep_params: Store the parameter vector in every trace record

    Returns:
        Best parameters and the trace of the run that found them. Line-search
        failures end the run with status 'stalled'.
    """
    config = config or OptimizerConfig()
    values = ensure_values(init, objective.n_params)
    layout = init.layout if isinstance(init, ParamVector) else {}
    rng = np.random.Generator(np.random.Philox(seed))

    logger.info(
        f"Minimizing {objective.kind.value} over {objective.n_params} parameters "
        f"({objective.fabric.kind.value} fabric, {objective.fabric.n_layers} layers)"
    )
    best: Optional[Tuple[np.ndarray, ConvergenceTrace]] = None
    for restart in range(config.n_restarts + 1):
        start = values.copy()
        if restart:
            start = start + config.restart_scale * rng.standard_normal(start.shape[0])
        x, trace = _run_once(objective, start, config, keep_params)
        trace.restart = restart
        optimizer_runs.labels(status=trace.status.value).inc()
        logger.debug(f"run {restart}: {trace.status.value} at {trace.final_value:.12e} after {trace.epochs} epochs")
        if best is None or trace.final_value < best[1].final_value:
            best = (x, trace)

    x, trace = best
    last_objective_value.labels(objective=objective.kind.value).set(trace.final_value)
    logger.info(
        f"Finished {objective.kind.value}: {trace.final_value:.12e} ({trace.status.value}, "
        f"{trace.epochs} epochs, {trace.n_evaluations} evaluations)"
    )
    return ParamVector(x, dict(layout)), trace
