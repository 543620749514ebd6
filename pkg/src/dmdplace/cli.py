"""
cli.py

Batch command-line front end: simulate -> identify -> place -> iterate -> evaluate -> report.

Every subcommand recomputes its upstream stages in memory from the configuration and writes
only its own artifacts, so ``pipeline`` produces exactly the files of the individual
subcommands run one after another, plus a summary.

Exit codes: 0 success, 1 runtime failure, 2 invalid configuration.
"""

import argparse
import logging
import sys
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .artifacts import ArtifactWriter, dmd_model_to_dict, snapshot_rows
from .config import ExperimentConfig, validate_config
from .control import compare_configs, format_metric_table, psd_rows, trajectory_rows
from .exceptions import DmdPlaceError, StageError, ValidationError
from .identification import (
    dominant_mode_shapes, energy_fraction, reconstruct, run_equivalence_trials,
    tip_spectrum_comparison)
from .model import mode_shape, simulate
from .placement import identify_and_place, loaded_modes, run_design_loop

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_VALIDATION = 2

ENERGY_TARGET = 0.9995
REPORTED_SHAPES = 3


class PipelineContext:
    """Lazily computed, cached stage results for one configuration."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.template = config.design_template()
        self.mode_set = config.mode_set()

    @cached_property
    def snapshots(self):
        sim = self.config.simulation
        return simulate(self.mode_set, self.template.n_nodes, sim.dt, sim.t_final)

    @cached_property
    def placement_run(self):
        return identify_and_place(self.snapshots, self.template)

    @property
    def model(self):
        return self.placement_run.model

    @cached_property
    def reconstruction(self) -> np.ndarray:
        return reconstruct(self.model)

    @cached_property
    def design(self):
        loop = self.config.loop
        return run_design_loop(self.mode_set, loop.pair_mass, self.template, loop.max_iters)

    @cached_property
    def comparison(self):
        return compare_configs(self.mode_set, self.design.final_placement,
                               self.design.naive_placement, self.config.control_settings(),
                               workers=self.config.placement.workers)

    @cached_property
    def equivalence(self):
        g = self.config.gramian
        return run_equivalence_trials(g.trials, self.config.seed, g.n_max, g.tol, g.workers)

    def energy(self) -> dict:
        sv = self.model.singular_values
        rank = self.model.rank
        return {
            "rank": rank,
            "energy_fraction": energy_fraction(sv, rank),
            "energy_fraction_squared": energy_fraction(sv, rank, squared=True),
            "target": ENERGY_TARGET,
        }


def write_simulate(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    data = ctx.snapshots
    header, rows = snapshot_rows(data)
    writer.write_csv("simulate/snapshots.csv", header, rows)
    sim = ctx.config.simulation
    writer.write_json("simulate/metadata.json", {
        "dt": sim.dt,
        "t_final": sim.t_final,
        "n_t": data.n_t,
        "n_candidates": sim.n_candidates,
        "beam_length": sim.beam_length,
        "node_x": data.node_x,
        "modes": list(ctx.config.modes),
        "seed": ctx.config.seed,
        "schema_version": ctx.config.schema_version,
    })


def _shape_rows(ctx: PipelineContext):
    model = ctx.model
    k = min(REPORTED_SHAPES, ctx.mode_set.n_modes, (model.rank + 1) // 2)
    node_x = ctx.snapshots.node_x
    dmd_shapes = dominant_mode_shapes(model, k)
    columns = []
    header = ["x"]
    for i in range(k):
        truth = np.asarray(mode_shape(ctx.mode_set.modes[i], node_x / ctx.mode_set.beam_length))
        truth = truth / np.max(np.abs(truth))
        dmd = dmd_shapes[:, i]
        if float(np.dot(truth, dmd)) < 0.0:
            dmd = -dmd
        header += [f"truth_mode{i + 1}", f"dmd_mode{i + 1}"]
        columns += [truth, dmd]
    rows = [[float(node_x[n])] + [float(c[n]) for c in columns] for n in range(node_x.size)]
    return header, rows


def write_identify(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    model = ctx.model
    data = ctx.snapshots
    sv = model.singular_values
    writer.write_csv(
        "identify/svd_spectrum.csv",
        ["index", "singular_value", "energy_fraction", "energy_fraction_squared"],
        [[k, float(sv[k - 1]), energy_fraction(sv, k), energy_fraction(sv, k, squared=True)]
         for k in range(1, sv.size + 1)])
    writer.write_json("identify/dmd_model.json", dmd_model_to_dict(model))
    writer.write_csv("identify/dmd_spectrum.csv", ["freq_hz", "zeta", "amplitude"],
                     [[float(v) for v in row] for row in model.continuous_spectrum()])

    header, rows = _shape_rows(ctx)
    writer.write_csv("identify/mode_shapes.csv", header, rows)

    truth_tip = data.tip
    recon_tip = ctx.reconstruction[-1]
    writer.write_csv("identify/tip_reconstruction.csv", ["t", "truth", "reconstruction"],
                     [[float(t), float(a), float(b)]
                      for t, a, b in zip(data.times, truth_tip, recon_tip)])
    spectrum = tip_spectrum_comparison(truth_tip, recon_tip, data.dt)
    writer.write_csv("identify/fft_comparison.csv", ["freq_hz", "truth", "reconstruction"],
                     [[float(f), float(a), float(b)] for f, a, b in
                      zip(spectrum["freq_hz"], spectrum["truth"], spectrum["reconstruction"])])

    error = np.linalg.norm(data.values - ctx.reconstruction) / np.linalg.norm(data.values)
    writer.write_json("identify/summary.json", {
        **ctx.energy(),
        "q": model.q,
        "stride": model.stride,
        "relative_reconstruction_error": float(error),
        "spectrum": model.continuous_spectrum(),
    })


def _write_landscape(writer: ArtifactWriter, name: str, landscape) -> None:
    if landscape:
        writer.write_csv(name, ["outer_index", "partner_index", "cost"],
                         [[e.outer_index, e.partner_index, float(e.cost)] for e in landscape])


def write_place(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    run = ctx.placement_run
    _write_landscape(writer, "place/landscape.csv", run.result.landscape)
    payload = run.result.to_dict()
    payload.update({"hankel_depth": run.problem.s, "n_r": run.problem.n_r,
                    "evaluator": ctx.template.evaluator})
    writer.write_json("place/placement.json", payload)


def write_iterate(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    design = ctx.design
    writer.write_json("iterate/history.json", design.to_dict())
    _write_landscape(writer, "iterate/landscape_final.csv", design.history[-1].landscape)
    corrected = loaded_modes(ctx.mode_set, design.final_placement, ctx.config.loop.pair_mass,
                             ctx.template)
    writer.write_json("iterate/corrected_modes.json", {
        "load": corrected.load.to_dict(),
        "frequencies": corrected.frequency_table(),
    })


def write_evaluate(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    comparison = ctx.comparison
    settings = ctx.config.control_settings()
    writer.write_json("evaluate/report.json", comparison.to_dict())
    writer.write_text("evaluate/table.txt", format_metric_table(comparison))
    header, rows = trajectory_rows(comparison)
    writer.write_csv("evaluate/trajectories.csv", header, rows)
    header, rows = psd_rows(comparison, settings)
    writer.write_csv("evaluate/psd.csv", header, rows)


def write_gramian(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    writer.write_json("gramian/equivalence.json", ctx.equivalence.to_dict())


def write_summary(ctx: PipelineContext, writer: ArtifactWriter) -> None:
    energy = ctx.energy()
    writer.write_json("summary.json", {
        "energy": {**energy, "meets_target": energy["energy_fraction"] >= ENERGY_TARGET},
        "placement": {
            "naive": list(ctx.design.naive_placement),
            "final": list(ctx.design.final_placement),
            "iterations": len(ctx.design.history),
            "converged": ctx.design.converged,
            "cycle": ctx.design.cycle,
        },
        "control_orderings": ctx.comparison.orderings(),
        "spectrum_equivalence": {"pass": ctx.equivalence.passed,
                                 "worst_dev": ctx.equivalence.worst_dev},
        "artifacts": sorted(writer.written),
    })


STAGES: Dict[str, Callable[[PipelineContext, ArtifactWriter], None]] = {
    "simulate": write_simulate,
    "identify": write_identify,
    "place": write_place,
    "iterate": write_iterate,
    "evaluate": write_evaluate,
    "verify-gramian": write_gramian,
}

PIPELINE = ("simulate", "identify", "place", "iterate", "evaluate", "verify-gramian")


def run_stage(name: str, ctx: PipelineContext, writer: ArtifactWriter) -> None:
    """
    Run one stage, tagging any failure with the stage name.

    Raises:
        StageError: If the stage fails.
    """
    logger.info("stage %s", name)
    try:
        STAGES[name](ctx, writer)
    except (DmdPlaceError, np.linalg.LinAlgError, ArithmeticError) as e:
        raise StageError(name, e) from e


def run_command(command: str, config: ExperimentConfig) -> List[str]:
    """
    Execute a subcommand for a validated configuration.

    Returns:
        Relative paths of the written artifacts.
    """
    ctx = PipelineContext(config)
    writer = ArtifactWriter(config.output_dir)
    if command == "pipeline":
        for name in PIPELINE:
            run_stage(name, ctx, writer)
        try:
            write_summary(ctx, writer)
        except DmdPlaceError as e:
            raise StageError("report", e) from e
    else:
        run_stage(command, ctx, writer)
    return writer.written


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment configuration (JSON); defaults reproduce the reference beam")
    common.add_argument("--out", help="output directory (overrides output_dir)")
    common.add_argument("--seed", type=int, help="seed for randomized checks")
    common.add_argument("--max-iters", type=int, help="design loop iteration cap")
    common.add_argument("--pair-mass", type=float, help="mass ratio of one sensor/actuator pair")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")

    parser = argparse.ArgumentParser(
        prog="dmdplace",
        description="DMD surrogate modelling and Hankel-based sensor/actuator placement for a cantilever beam.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate": "write truth snapshots",
        "identify": "fit DMD and write spectrum, shape and reconstruction data",
        "place": "search the optimal placement of the unloaded beam",
        "iterate": "iterate placement against the mass-loaded beam",
        "evaluate": "compare optimal, suboptimal and open-loop control",
        "pipeline": "run every stage and write a summary",
        "verify-gramian": "check Hankel/Gramian spectrum equivalence on random systems",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    config = ExperimentConfig.from_json_file(args.config) if args.config else ExperimentConfig()
    config = config.with_overrides(output_dir=args.out, seed=args.seed,
                                   max_iters=args.max_iters, pair_mass=args.pair_mass)
    validate_config(config)
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        config = load_config(args)
        written = run_command(args.command, config)
    except ValidationError as e:
        print(f"dmdplace: invalid configuration: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except DmdPlaceError as e:
        print(f"dmdplace: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    logger.info("wrote %d artifacts under %s", len(written), config.output_dir)
    return EXIT_OK
