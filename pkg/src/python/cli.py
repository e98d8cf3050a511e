#!/usr/bin/env python
"""
Command line front end.

Every subcommand writes a table (CSV) or a document (JSON) to --out or
stdout; logs go to stderr. Exit codes: 0 success, 1 invalid input,
2 runtime failure.
"""

import csv
import functools
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import click
import numpy as np

from .config.schemas import validate_document
from .config.settings import Config, OptimizerConfig, build_dataclass
from .core.exceptions import (
    ConfigurationError,
    QNPFabricError,
    ShiftRuleError,
    SimulationError,
    ValidationError,
    exit_code_for,
)
from .core.logging import setup_logging
from .fabric.initialization import random_params
from .fabric.spec import FERMIONIC_KINDS, FabricKind, FabricSpec
from .fabric.tessellation import layers_for_parameters
from .gates.catalog import GATE_KINDS, gate_kind
from .gates.decompositions import decomposition_variants, equivalence_residual
from .gates.matrices import gate_matrix
from .gradients.adjoint import finite_difference_gradient, value_and_gradient
from .gradients.generators import RuleClass, classify_generator
from .gradients.shift_rules import make_shift_rule, shift_gradient
from .hamiltonian.fci import fci_ground_state
from .hamiltonian.integrals import from_integrals, read_fcidump
from .hamiltonian.models import model_hamiltonian
from .monitoring.metrics import render_metrics, setup_metrics
from .sim.pauli import PauliSum
from .symmetry.irreps import IrrepKey, classify_edge_case, edge_case_table, enumerate_irreps, irrep_dimension
from .vqe.objective import Objective
from .vqe.optimizer import minimize
from .vqe.sweeps import (
    HaarProblem,
    SweepProblem,
    amplitude_spectrum,
    depth_sweep,
    energy_reference,
    haar_run,
    haar_study,
    initial_point,
)

logger = logging.getLogger("src.python.cli")

# Default fabric size: parameters per irrep CSF
PARAMS_PER_CSF = 2


@dataclass
class ExperimentConfig:
    """JSON experiment description; every section is optional."""
    fabric: Dict[str, Any] = field(default_factory=dict)
    irrep: Dict[str, int] = field(default_factory=dict)
    hamiltonian: Dict[str, Any] = field(default_factory=dict)
    optimizer: Dict[str, Any] = field(default_factory=dict)
    seeds: List[int] = field(default_factory=list)
    layers: Optional[int] = None
    depths: List[int] = field(default_factory=list)
    strategies: List[str] = field(default_factory=list)
    output: Dict[str, Any] = field(default_factory=dict)

    FABRIC_KEYS = frozenset({"kind", "pi_gate", "gate_order"})
    IRREP_KEYS = frozenset({"M", "n_alpha", "n_beta", "S"})
    HAMILTONIAN_KEYS = frozenset({"model", "params", "fcidump"})
    OUTPUT_KEYS = frozenset({"format", "out", "spectrum"})

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        """
        Raises:
            ConfigurationError: On unknown keys at any level, conflicting sources
                or values outside schemas/experiment.schema.json
        """
        config = build_dataclass(cls, data, "experiment")
        for section, allowed in (("fabric", cls.FABRIC_KEYS), ("irrep", cls.IRREP_KEYS),
                                 ("hamiltonian", cls.HAMILTONIAN_KEYS), ("output", cls.OUTPUT_KEYS)):
            unknown = sorted(set(getattr(config, section)) - allowed)
            if unknown:
                raise ConfigurationError(f"experiment.{section}: unknown keys {unknown}")
        if "model" in config.hamiltonian and "fcidump" in config.hamiltonian:
            raise ConfigurationError("experiment.hamiltonian: give either model or fcidump, not both")
        build_dataclass(OptimizerConfig, config.optimizer, "experiment.optimizer")
        validate_document(dict(data), "experiment", ConfigurationError)
        return config

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"cannot read experiment config {path}: {e}") from e
        return cls.from_dict(data)

    def optimizer_config(self, base: OptimizerConfig) -> OptimizerConfig:
        """Run-level optimizer settings with this experiment's overrides applied."""
        return replace(base, **self.optimizer)


def _first(*values):
    for value in values:
        if value is not None:
            return value
    return None


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_output(document: Any, rows: Sequence[Mapping[str, Any]], fmt: str, out: Optional[str],
                 schema: Optional[str] = None) -> None:
    """CSV of `rows` or JSON of `document` to a file or stdout; JSON is checked against `schema`."""
    if fmt == "json":
        text = json.dumps(document, indent=2, default=_jsonable) + "\n"
        if schema:
            validate_document(json.loads(text), schema, SimulationError)
    else:
        buffer = io.StringIO()
        if rows:
            columns: List[str] = []
            for row in rows:
                columns.extend(k for k in row if k not in columns)
            writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        text = buffer.getvalue()
    if out:
        Path(out).write_text(text)
        logger.info(f"Wrote {out}")
    else:
        click.echo(text, nl=False)


def common_options(func: Callable) -> Callable:
    """--seed, --out, --format, --jobs and --config."""
    options = [
        click.option("--seed", type=int, default=None, help="Seed of all random draws"),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (stdout if omitted)"),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None, help="Output format"),
        click.option("--jobs", type=int, default=None, help="Parallel independent runs"),
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="Experiment config (JSON)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def handle_errors(func: Callable) -> Callable:
    """Turn library exceptions into exit codes with a one-line diagnostic."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            result = func(*args, **kwargs)
        except (QNPFabricError, ValueError) as e:
            code = exit_code_for(e) if isinstance(e, QNPFabricError) else 1
            click.echo(f"error: {e}", err=True)
            logger.debug("Command failed", exc_info=True)
            ctx.exit(code)
        except Exception as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            logger.debug("Command failed", exc_info=True)
            ctx.exit(2)
        metrics_out = ctx.find_root().obj.get("metrics_out") if ctx.find_root().obj else None
        if metrics_out:
            Path(metrics_out).write_bytes(render_metrics())
        return result
    return wrapper


def _settings() -> Config:
    obj = click.get_current_context().find_root().obj or {}
    return obj.get("settings") or Config()


def _emit(document: Any, rows: Sequence[Mapping[str, Any]], fmt: Optional[str], out: Optional[str],
          schema: str) -> None:
    """write_output with the settings file's output defaults."""
    settings = _settings()
    write_output(document, rows, _first(fmt, settings.output.format), _first(out, settings.output.out), schema)


def _load_config(path: Optional[str]) -> ExperimentConfig:
    return ExperimentConfig.from_json(path) if path else ExperimentConfig()


def _load_hamiltonian(config: ExperimentConfig, model: Optional[str], fcidump: Optional[str], M: Optional[int],
                      model_params: Dict[str, Any], seed: int,
                      default_model: str = "hubbard_chain") -> Tuple[PauliSum, int, Optional[IrrepKey]]:
    """(PauliSum, M, default irrep or None) from flags or the config."""
    fcidump = _first(fcidump, config.hamiltonian.get("fcidump"))
    if fcidump and model:
        raise ValidationError("give either --model or --fcidump")
    if fcidump:
        ints = read_fcidump(fcidump)
        default_key = None
        if ints.n_electrons is not None:
            ms2 = ints.ms2 or 0
            n_alpha, n_beta = (ints.n_electrons + ms2) // 2, (ints.n_electrons - ms2) // 2
            default_key = IrrepKey(ints.M, n_alpha, n_beta, abs(ms2))
        return from_integrals(ints), ints.M, default_key
    name = _first(model, config.hamiltonian.get("model"), default_model)
    M = _first(M, config.irrep.get("M"))
    if M is None:
        raise ValidationError("--M is required for model Hamiltonians")
    params = dict(config.hamiltonian.get("params", {}))
    params.update(model_params)
    return model_hamiltonian(name, M, params, seed=seed), M, None


def _resolve_key(config: ExperimentConfig, M: int, irrep: Optional[str],
                 default: Optional[IrrepKey]) -> IrrepKey:
    if irrep:
        key = IrrepKey.parse(M, irrep)
    elif config.irrep:
        missing = sorted({"n_alpha", "n_beta", "S"} - set(config.irrep))
        if missing:
            raise ConfigurationError(f"experiment.irrep: missing keys {missing}")
        key = IrrepKey(M, config.irrep["n_alpha"], config.irrep["n_beta"], config.irrep["S"])
    elif default is not None:
        key = default
    else:
        raise ValidationError("an irrep is required (--irrep n_alpha,n_beta,S)")
    key.validate()
    return key


def _fabric(config: ExperimentConfig, kind: Optional[str], pi_gate: Optional[str], M: int,
            layers: int) -> FabricSpec:
    data = dict(config.fabric)
    if kind:
        data["kind"] = kind
    if pi_gate:
        data["pi_gate"] = pi_gate
    data.setdefault("kind", FabricKind.Q.value)
    # qubit-level fabrics are sized by qubits, fermionic ones by orbitals
    data["M"] = M if FabricKind(data["kind"]) in FERMIONIC_KINDS else 2 * M
    data["n_layers"] = layers
    spec = FabricSpec.from_dict(data)
    limit = _settings().simulation.max_qubits
    if spec.n_qubits > limit:
        raise ValidationError(f"fabric needs {spec.n_qubits} qubits, simulation.max_qubits is {limit}")
    return spec


def _default_layers(spec: FabricSpec, key: IrrepKey) -> int:
    return layers_for_parameters(spec, PARAMS_PER_CSF * irrep_dimension(key))


@click.group()
@click.option("--log-level", default=None, help="Log level (settings file, else INFO)",
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.option("--json-logs", is_flag=True, help="Emit JSON log records")
@click.option("--settings", "settings_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Run settings (JSON): simulation, optimizer, gradient, output, logging, run")
@click.option("--metrics-out", type=click.Path(dir_okay=False), default=None,
              help="Write Prometheus metrics text after the run")
@click.pass_context
def cli(ctx, log_level, json_logs, metrics_out, settings_path):
    """Quantum-number-preserving gate fabric simulator"""
    try:
        settings = Config.from_json(settings_path) if settings_path else Config()
    except ConfigurationError as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(exit_code_for(e))
    setup_logging("src.python", level=log_level or settings.logging.level,
                  json_output=json_logs or settings.logging.json_output)
    setup_metrics()
    ctx.obj = {"metrics_out": metrics_out, "settings": settings}


@cli.command()
@click.option("--model", default=None, help="hubbard_chain, pairing or random_symmetric")
@click.option("--fcidump", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--M", "M", type=int, default=None, help="Spatial orbitals")
@click.option("--t", type=float, default=None, help="Hubbard hopping")
@click.option("--U", "U", type=float, default=None, help="Hubbard on-site repulsion")
@click.option("--G", "G", type=float, default=None, help="Pairing strength")
@click.option("--irrep", default=None, help="n_alpha,n_beta,S")
@click.option("--fabric", "kind", default=None, type=click.Choice([k.value for k in FabricKind]))
@click.option("--pi-gate", default=None, type=click.Choice(["identity", "OR_pi", "OFSWAP"]))
@click.option("--layers", type=int, default=None)
@click.option("--depths", default=None, help="Comma-separated layer counts for a depth sweep")
@click.option("--strategy", "strategies", multiple=True, help="A, B or random (repeatable)")
@click.option("--seeds", "n_seeds", type=int, default=None, help="Number of seeds per sweep point")
@click.option("--spectrum", type=click.Path(dir_okay=False), default=None,
              help="Write the final amplitude spectrum next to the FCI one")
@common_options
@handle_errors
def vqe(model, fcidump, M, t, U, G, irrep, kind, pi_gate, layers, depths, strategies, n_seeds, spectrum,
        seed, out, fmt, jobs, config_path):
    """Minimize the energy of a fabric on one irrep"""
    settings = _settings()
    config = _load_config(config_path)
    seed = _first(seed, config.seeds[0] if config.seeds else None, settings.run.seed)
    fmt = _first(fmt, config.output.get("format"), settings.output.format)
    out = _first(out, config.output.get("out"), settings.output.out)
    jobs = _first(jobs, settings.run.jobs)
    spectrum = _first(spectrum, config.output.get("spectrum"))
    model_params = {name: value for name, value in (("t", t), ("U", U), ("G", G)) if value is not None}
    hamiltonian, M, default_key = _load_hamiltonian(config, model, fcidump, M, model_params, seed)
    key = _resolve_key(config, M, irrep, default_key)
    base = _fabric(config, kind, pi_gate, M, 1)
    optimizer = config.optimizer_config(settings.optimizer)
    strategies = list(strategies) or config.strategies or ["A"]

    depth_list = [int(d) for d in depths.split(",")] if depths else config.depths
    if depth_list:
        seeds = list(range(seed, seed + n_seeds)) if n_seeds else (config.seeds or [seed])
        rows = depth_sweep(SweepProblem(base, hamiltonian, key), depth_list, strategies, seeds, optimizer, jobs)
        dicts = [row.to_dict() for row in rows]
        write_output({"irrep": key.to_dict(), "fabric": base.to_dict(), "rows": dicts}, dicts, fmt, out, "vqe")
        return

    n_layers = _first(layers, config.layers, _default_layers(base, key))
    spec, init = initial_point(base.with_layers(n_layers), strategies[0], seed, 0.0)
    objective = Objective.energy(spec, hamiltonian, energy_reference(spec, key))
    params, trace = minimize(objective, init, optimizer, seed=seed)
    fci_energy, fci_state = fci_ground_state(hamiltonian, key)
    logger.info(f"E = {trace.final_value:.12f}, E_FCI = {fci_energy:.12f}, error {trace.final_value - fci_energy:.3e}")

    if spectrum:
        entries = amplitude_spectrum(objective.state(params), "fci_consistent", reference=fci_state,
                                     cutoff=settings.simulation.tolerance)
        write_output(None, [entry.to_dict() for entry in entries], "csv", spectrum)

    document = {
        "irrep": key.to_dict(),
        "fabric": spec.to_dict(),
        "strategy": strategies[0],
        "n_params": len(params),
        "energy": trace.final_value,
        "fci_energy": fci_energy,
        "error": trace.final_value - fci_energy,
        "trace": trace.to_dict(),
        "params": params.values,
    }
    write_output(document, trace.rows(), fmt, out, "vqe")


@cli.command()
@click.option("--M", "M", type=int, default=None)
@click.option("--na", type=int, default=None)
@click.option("--nb", type=int, default=None)
@click.option("--S", "S", type=int, default=None)
@click.option("--fabric", "kind", default=None, type=click.Choice([k.value for k in FabricKind]))
@click.option("--pi-gate", default=None, type=click.Choice(["identity", "OR_pi", "OFSWAP"]))
@click.option("--layers", type=int, default=None)
@click.option("--seeds", "n_seeds", type=int, default=1, show_default=True,
              help="Number of consecutive seeds; more than one gives a summary table")
@common_options
@handle_errors
def haar(M, na, nb, S, kind, pi_gate, layers, n_seeds, seed, out, fmt, jobs, config_path):
    """Optimize the overlap between two Haar-random irrep states"""
    settings = _settings()
    config = _load_config(config_path)
    seed = _first(seed, config.seeds[0] if config.seeds else None, settings.run.seed)
    fmt = _first(fmt, config.output.get("format"), settings.output.format)
    out = _first(out, config.output.get("out"), settings.output.out)
    jobs = _first(jobs, settings.run.jobs)
    M = _first(M, config.irrep.get("M"))
    values = [_first(na, config.irrep.get("n_alpha")), _first(nb, config.irrep.get("n_beta")),
              _first(S, config.irrep.get("S"))]
    if M is None or None in values:
        raise ValidationError("--M, --na, --nb and --S are required")
    key = IrrepKey(M, *values)
    key.validate()
    base = _fabric(config, kind, pi_gate, M, 1)
    spec = base.with_layers(_first(layers, config.layers, _default_layers(base, key)))
    problem = HaarProblem(spec, key)
    optimizer = config.optimizer_config(settings.optimizer)

    if n_seeds > 1:
        results = haar_study(problem, list(range(seed, seed + n_seeds)), optimizer, jobs)
        rows = [result.to_dict() for result in results]
        write_output({"irrep": key.to_dict(), "fabric": spec.to_dict(), "rows": rows}, rows, fmt, out, "haar")
        return

    result = haar_run(problem, seed, optimizer)
    logger.info(f"infidelity {result.infidelity:.3e} with {result.n_params} parameters (dimension {result.dimension})")
    document = {"irrep": key.to_dict(), "fabric": spec.to_dict(), **result.to_dict(), "trace": result.trace.to_dict()}
    write_output(document, result.trace.rows(), fmt, out, "haar")


def _irrep_row(key: IrrepKey, dim: int) -> Dict[str, Any]:
    universal, unconstrained = classify_edge_case(key)
    return {**key.to_dict(), "dimension": dim, "universal": universal,
            "unconstrained": f"{unconstrained.M},{unconstrained.n_alpha},{unconstrained.n_beta},{unconstrained.S}"}


@cli.command()
@click.option("--M", "M", type=int, required=True)
@common_options
@handle_errors
def irreps(M, seed, out, fmt, jobs, config_path):
    """Table of all irreps of M orbitals with dimensions and universality"""
    rows = [_irrep_row(key, dim) for key, dim in enumerate_irreps(M)]
    logger.info(f"M={M}: {len(rows)} irreps, {sum(not r['universal'] for r in rows)} non-universal")
    _emit({"M": M, "total_dimension": sum(r["dimension"] for r in rows), "irreps": rows}, rows, fmt, out, "irreps")


@cli.command()
@click.option("--M", "M", type=int, required=True)
@common_options
@handle_errors
def edgecases(M, seed, out, fmt, jobs, config_path):
    """Irreps on which Q-type fabrics are not universal"""
    rows = [_irrep_row(key, dim) for key, dim in edge_case_table(M)]
    total = sum(r["dimension"] for r in rows)
    logger.info(f"M={M}: {len(rows)} non-universal irreps, total dimension {total}")
    _emit({"M": M, "count": len(rows), "total_dimension": total, "irreps": rows}, rows, fmt, out, "edgecases")


def _slot_kinds(objective: Objective) -> Dict[int, Any]:
    return {slot: gate.kind for gate in objective.gates for slot in gate.slots}


@cli.command()
@click.option("--model", default=None, help="Model name (config, else random_symmetric)")
@click.option("--fcidump", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--M", "M", type=int, default=None, help="Spatial orbitals (config, else 3)")
@click.option("--irrep", default=None, help="n_alpha,n_beta,S (config, else 1,1,0)")
@click.option("--fabric", "kind", default=None, type=click.Choice([k.value for k in FabricKind]))
@click.option("--layers", type=int, default=None, help="Fabric layers (config, else 2)")
@click.option("--decomposed", is_flag=True, help="Check the elementary-gate expansion instead")
@click.option("--step", type=float, default=None, help="Finite-difference step (settings gradient.fd_step)")
@common_options
@handle_errors
def gradcheck(model, fcidump, M, irrep, kind, layers, decomposed, step, seed, out, fmt, jobs, config_path):
    """Compare adjoint, finite-difference and shift-rule gradients per slot"""
    settings = _settings()
    config = _load_config(config_path)
    seed = _first(seed, config.seeds[0] if config.seeds else None, settings.run.seed)
    fmt = _first(fmt, config.output.get("format"), settings.output.format)
    out = _first(out, config.output.get("out"), settings.output.out)
    step = _first(step, settings.gradient.fd_step)
    M = _first(M, config.irrep.get("M"), 3)
    hamiltonian, M, default_key = _load_hamiltonian(config, model, fcidump, M, {}, seed,
                                                    default_model="random_symmetric")
    if not irrep and not config.irrep and default_key is None:
        irrep = "1,1,0"
    key = _resolve_key(config, M, irrep, default_key)
    spec = _fabric(config, kind, None, M, _first(layers, config.layers, 2))
    objective = Objective.energy(spec, hamiltonian, energy_reference(spec, key))
    values = random_params(spec, seed).values
    if decomposed:
        objective, values = objective.decomposed(values)

    _, adjoint = value_and_gradient(objective, values)
    fd = finite_difference_gradient(objective, values, step)
    kinds = _slot_kinds(objective)
    rows = []
    for slot in range(objective.n_params):
        single = GATE_KINDS[kinds[slot]].n_params == 1
        report = classify_generator(kinds[slot], settings.gradient.spectrum_tol) if single else None
        rule_class = report.rule_class if report else RuleClass.UNSUPPORTED
        row = {"slot": slot, "gate": kinds[slot].value, "rule_class": rule_class.value,
               "adjoint": float(adjoint[slot]), "finite_difference": float(fd[slot])}
        if rule_class is not RuleClass.UNSUPPORTED:
            symmetric = make_shift_rule(rule_class)
            optimal = make_shift_rule(rule_class, variance_optimal=True)
            row["shift"] = shift_gradient(objective, values, slot, symmetric)
            row["shift_optimal"] = shift_gradient(objective, values, slot, optimal)
            try:
                row["shift_elided"] = shift_gradient(objective, values, slot, symmetric, elide_gate=True)
            except ShiftRuleError:
                row["shift_elided"] = None
        rows.append(row)

    deviations = [abs(r[c] - r["adjoint"]) for r in rows for c in ("finite_difference", "shift", "shift_optimal",
                                                                    "shift_elided") if r.get(c) is not None]
    logger.info(f"{len(rows)} slots, max deviation from adjoint {max(deviations, default=0.0):.3e}")
    _emit({"fabric": spec.to_dict(), "irrep": key.to_dict(), "decomposed": decomposed, "rows": rows},
          rows, fmt, out, "gradcheck")


@cli.command()
@click.option("--kind", "kinds", multiple=True, help="Restrict to these gate kinds (repeatable)")
@click.option("--matrices", is_flag=True, help="Include reference matrices at a random angle (JSON only)")
@common_options
@handle_errors
def gates(kinds, matrices, seed, out, fmt, jobs, config_path):
    """Gate catalog: decompositions, generator classes and equivalence residuals"""
    settings = _settings()
    rng = np.random.Generator(np.random.Philox(_first(seed, settings.run.seed)))
    selected = [gate_kind(k).name for k in kinds] or list(GATE_KINDS)
    rows, documents = [], []
    for name in selected:
        spec = GATE_KINDS[name]
        report = classify_generator(name, settings.gradient.spectrum_tol) if spec.n_params == 1 else None
        base = {"kind": name.value, "arity": spec.arity, "n_params": spec.n_params,
                "quantum_number_preserving": spec.quantum_number_preserving,
                "rule_class": report.rule_class.value if report else "",
                "scale_a": report.scale_a if report else None}
        document = {**base, "generator": report.to_dict() if report else None, "decompositions": []}
        angles = rng.uniform(-np.pi, np.pi, spec.n_params)
        if matrices:
            document["matrix"] = gate_matrix(name, angles)
        for variant in decomposition_variants(name):
            residual = equivalence_residual(name, variant.variant, angles)
            rows.append({**base, "variant": variant.variant, "two_qubit_count": variant.two_qubit_count,
                         "depth": variant.depth, "residual": residual})
            document["decompositions"].append({**variant.to_dict(), "residual": residual})
        if not document["decompositions"]:
            rows.append({**base, "variant": "", "two_qubit_count": None, "depth": None, "residual": None})
        documents.append(document)
    _emit({"gates": documents}, rows, fmt, out, "gates")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    try:
        code = cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 2
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(run())
