"""
VQE Package

Energy and overlap objectives, the L-BFGS driver with convergence traces,
depth sweeps, Haar-random overlap studies and amplitude spectra.
"""

from .batch import BatchResult, BatchRunner, run_jobs
from .objective import Objective, ObjectiveKind, evaluate
from .optimizer import ConvergenceTrace, EpochRecord, TerminalStatus, minimize, params_digest
from .sweeps import (
    HaarProblem,
    HaarResult,
    SpectrumEntry,
    SpectrumOrder,
    SweepProblem,
    SweepRow,
    amplitude_spectrum,
    depth_sweep,
    haar_run,
    haar_states,
    haar_study,
)

__all__ = [
    "BatchResult",
    "BatchRunner",
    "ConvergenceTrace",
    "EpochRecord",
    "HaarProblem",
    "HaarResult",
    "Objective",
    "ObjectiveKind",
    "SpectrumEntry",
    "SpectrumOrder",
    "SweepProblem",
    "SweepRow",
    "TerminalStatus",
    "amplitude_spectrum",
    "depth_sweep",
    "evaluate",
    "haar_run",
    "haar_states",
    "haar_study",
    "minimize",
    "params_digest",
    "run_jobs",
]
