"""
Prometheus metrics for simulation and optimization runs.

Instruments live in a dedicated registry; the CLI can dump them in the
text exposition format after a run.
"""
import time
from typing import Dict, Optional

from prometheus_client import (
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    Info,
    generate_latest,
)

from .. import __version__

registry = CollectorRegistry()

# Simulation metrics
gate_applications = Counter(
    "qnp_gate_applications_total",
    "Gate matrices applied to statevectors",
    ["kind"],
    registry=registry,
)

objective_evaluations = Counter(
    "qnp_objective_evaluations_total",
    "Objective function evaluations",
    ["objective"],
    registry=registry,
)

# Optimizer metrics
optimizer_epochs = Counter(
    "qnp_optimizer_epochs_total",
    "Optimizer epochs (iterations) completed",
    registry=registry,
)

optimizer_runs = Counter(
    "qnp_optimizer_runs_total",
    "Optimizer runs by terminal status",
    ["status"],
    registry=registry,
)

optimization_duration = Histogram(
    "qnp_optimization_duration_seconds",
    "Wall time of one optimization run",
    ["objective"],
    registry=registry,
)

last_objective_value = Gauge(
    "qnp_last_objective_value",
    "Objective value at the end of the most recent run",
    ["objective"],
    registry=registry,
)

build_info = Info(
    "qnp_fabric",
    "Build information",
    registry=registry,
)


def setup_metrics() -> None:
    """Initialize metrics with default values"""
    build_info.info({"version": __version__})


def render_metrics() -> bytes:
    """Return all metrics in the Prometheus text format."""
    return generate_latest(registry)


class MetricsTimer:
    """Context manager for timing operations"""

    def __init__(self, histogram: Histogram, labels: Optional[Dict[str, str]] = None):
        self.histogram = histogram
        self.labels = labels or {}
        self.start_time: Optional[float] = None
        self.duration: Optional[float] = None

    def __enter__(self) -> "MetricsTimer":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.duration = time.perf_counter() - self.start_time
        if self.labels:
            self.histogram.labels(**self.labels).observe(self.duration)
        else:
            self.histogram.observe(self.duration)
