"""Command line entry point.

    repulse-quad <command> --config run.json [--seed N] [--threads N] [--out PATH]

Outputs go to <output_dir>/<config hash>/; REPULSE_QUAD_OUT (also read from a
.env file) overrides output_dir. Exit status is 0 on success, 1 on a run error
and 2 on a usage or configuration error.
"""

import argparse
import logging
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from dotenv import load_dotenv

from .common.exceptions import (
    ConfigIssue,
    ConfigurationError,
    RepulseQuadError,
    ValidationError,
)
from .common.timing import Stopwatch
from .core.config import EmbeddingSettings, GibbsRunConfig
from .embedding.estimator import EmbeddingEstimate
from .embedding.potential import EquilibratedPotential, Potential, QuadraticPotential
from .experiments.concentration import run_concentration_tail
from .experiments.crystallization import DEFAULT_SCHEDULES, run_crystallization
from .experiments.energy_decay import run_energy_decay
from .experiments.multimodal import run_multimodal
from .experiments.report import ExperimentReport
from .experiments.runner import gibbs_draw
from .experiments.variance import run_variance_comparison
from .io.config import (
    PotentialKind,
    RunConfigFile,
    TargetKind,
    canonical_document,
    config_hash,
    parse_config,
)
from .io.storage import (
    read_points,
    write_diagnostics,
    write_embedding,
    write_json,
    write_points,
    write_report,
)
from .io.svg import Axes, emit_pointcloud_svg, emit_series_svg
from .kernels import BaseKernel, build_kernel
from .measures.base import TargetMeasure
from .samplers.annealing import build_potential

logger = logging.getLogger(__name__)

OUTPUT_ENV = "REPULSE_QUAD_OUT"


@dataclass
class RunContext:
    """Everything a command needs, built once from the config file"""

    config: RunConfigFile
    run_dir: Path
    kernel: BaseKernel
    target: TargetMeasure
    settings: EmbeddingSettings
    threads: int
    out: Optional[Path] = None

    @property
    def hash(self) -> str:
        return self.run_dir.name

    def gibbs(self, n: Optional[int] = None) -> GibbsRunConfig:
        try:
            return self.config.gibbs_config(n)
        except ValidationError as e:
            raise ConfigurationError([ConfigIssue("/gibbs", str(e))]) from None

    def potential(self) -> Potential:
        """Confining potential per gibbs.potential.

        A stored embedding is reused when gibbs.embedding_path is set; a freshly
        estimated one is written to embedding.csv in the run directory.
        """
        section = self.config.gibbs
        if section.potential == PotentialKind.QUADRATIC:
            return QuadraticPotential(self.target.dimension)
        if section.embedding_path:
            embedding = EmbeddingEstimate(read_points(section.embedding_path), self.kernel)
            return EquilibratedPotential(embedding, self.target.support_radius)
        potential = build_potential(self.target, self.kernel, self.settings, self.config.seed)
        path = write_embedding(potential.embedding, self.run_dir / "embedding.csv")
        logger.info(f"Wrote {potential.embedding.size} embedding points to {path}")
        return potential


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


def _write_clouds(context: RunContext, clouds: Dict[str, np.ndarray], prefix: str) -> None:
    for name, points in clouds.items():
        stem = f"{prefix}_{_slug(name)}"
        write_points(points, context.run_dir / f"{stem}.csv")
        emit_pointcloud_svg(points, context.run_dir / f"{stem}.svg", title=name)


def _crystallize(context: RunContext) -> str:
    experiment = context.config.experiment
    if context.config.gibbs.potential != PotentialKind.QUADRATIC:
        raise ConfigurationError(
            [ConfigIssue("/gibbs/potential", "crystallize needs the quadratic potential")]
        )
    report, clouds = run_crystallization(
        context.gibbs(),
        context.kernel,
        potential=QuadraticPotential(context.target.dimension),
        schedules=experiment.schedules or DEFAULT_SCHEDULES,
        replicates=experiment.replicates,
        threads=context.threads,
        config_hash=context.hash,
    )
    write_report(report, context.run_dir / "report.json")
    _write_clouds(context, clouds, "pointcloud")
    per_cloud = {}
    for cell in report.cells:
        name = cell.method if cell.replicate == 0 else f"{cell.method}#{cell.replicate}"
        per_cloud[name] = cell.statistics
    write_json(per_cloud, context.run_dir / "diagnostics.json")
    summary = report.summary
    return (
        f"crystallize: {len(clouds)} point clouds, NN CV {summary['mean_nn_cv']}, "
        f"strictly decreasing={summary['cv_strictly_decreasing']}"
    )


def _mean_series(
    report: ExperimentReport, statistic: str, methods: Sequence[str], n_grid: Sequence[int]
) -> Dict[str, Tuple[List[int], List[float]]]:
    return {
        method: (
            list(n_grid),
            [float(np.mean(report.values(statistic, method, n))) for n in n_grid],
        )
        for method in methods
    }


def _energy_decay(context: RunContext) -> str:
    experiment = context.config.experiment
    report = run_energy_decay(
        experiment.n_grid,
        context.target,
        context.kernel,
        context.gibbs(experiment.n_grid[0]),
        settings=context.settings,
        potential=context.potential(),
        replicates=experiment.replicates,
        reference_length=experiment.reference_length,
        threads=context.threads,
        config_hash=context.hash,
    )
    write_report(report, context.run_dir / "report.json")
    try:
        emit_series_svg(
            _mean_series(report, "mmd2", ("gibbs", "mh"), experiment.n_grid),
            context.run_dir / "energy_decay.svg",
            axes=Axes.LOGLOG,
            title="Squared MMD against n",
            x_label="n",
            y_label="mmd2",
        )
    except RepulseQuadError as e:
        logger.warning(f"Skipped decay figure: {e}")
    summary = report.summary
    return (
        f"energy-decay: Gibbs slope {summary['gibbs_slope']:.3f}, "
        f"MH/Gibbs ratio {summary['mh_over_gibbs_geometric_mean']:.3f}"
    )


def _variance(context: RunContext) -> str:
    experiment = context.config.experiment
    report = run_variance_comparison(
        experiment.n_grid,
        context.target,
        context.kernel,
        context.gibbs(experiment.n_grid[0]),
        integrand=experiment.integrand,
        schedules=experiment.schedules,
        replicates=experiment.replicates,
        settings=context.settings,
        potential=context.potential(),
        identical_replicates=experiment.identical_replicates,
        threads=context.threads,
        config_hash=context.hash,
    )
    write_report(report, context.run_dir / "report.json")
    variances = report.summary["variance"]
    try:
        emit_series_svg(
            {
                method: (experiment.n_grid, [values[str(n)] for n in experiment.n_grid])
                for method, values in variances.items()
            },
            context.run_dir / "variance.svg",
            axes=Axes.LOGLOG,
            title=f"Variance of {experiment.integrand}",
            x_label="n",
            y_label="variance",
        )
    except RepulseQuadError as e:
        logger.warning(f"Skipped variance figure: {e}")
    return f"variance: Gibbs/MH ratio by n {report.summary['gibbs_over_mh']}"


def _concentration(context: RunContext) -> str:
    experiment = context.config.experiment
    report = run_concentration_tail(
        context.gibbs().n,
        context.target,
        context.kernel,
        context.gibbs(),
        r_grid=experiment.r_grid,
        schedules=experiment.schedules or DEFAULT_SCHEDULES,
        replicates=experiment.replicates,
        settings=context.settings,
        potential=context.potential(),
        reference_length=experiment.reference_length,
        threads=context.threads,
        config_hash=context.hash,
    )
    write_report(report, context.run_dir / "report.json")
    return (
        f"concentration: tails {report.summary['tails']}, "
        f"non-increasing={report.summary['all_non_increasing']}"
    )


def _multimodal(context: RunContext) -> str:
    if context.config.target.family != TargetKind.MIXTURE_ON_CIRCLE:
        raise ConfigurationError(
            [ConfigIssue("/target/family", "multimodal needs mixture_on_circle")]
        )
    experiment = context.config.experiment
    report, point_sets = run_multimodal(
        context.target,
        context.kernel,
        context.gibbs(),
        settings=context.settings,
        potential=context.potential(),
        variants=experiment.variants,
        snapshots=experiment.snapshots,
        replicates=experiment.replicates,
        threads=context.threads,
        config_hash=context.hash,
    )
    write_report(report, context.run_dir / "report.json")
    _write_clouds(context, point_sets, "snapshot")
    return f"multimodal: occupancy {report.summary['occupancy']}"


def _sample(context: RunContext) -> str:
    cfg = context.gibbs()
    nodes, diagnostics = gibbs_draw(
        cfg, context.kernel, context.target, context.potential(), context.settings
    )
    out = context.out or context.run_dir / "nodes.csv"
    write_points(nodes, out)
    write_diagnostics(diagnostics, context.run_dir)
    emit_pointcloud_svg(nodes, context.run_dir / "nodes.svg", title=f"n={cfg.n}")
    return (
        f"sample: {cfg.n} nodes -> {out} (acceptance {diagnostics.acceptance_rate:.3f}, "
        f"alpha0 {diagnostics.tuned_alpha0:.4g})"
    )


def _embed(context: RunContext) -> str:
    potential = build_potential(
        context.target, context.kernel, context.settings, context.config.seed
    )
    embedding = potential.embedding
    path = write_embedding(embedding, context.out or context.run_dir / "embedding.csv")
    emit_pointcloud_svg(embedding.points, context.run_dir / "embedding.svg", title="embedding")
    write_json(
        {
            "size": embedding.size,
            "support_radius": potential.radius,
            "kernel": context.kernel.describe(),
            "target": context.target.describe(),
            "embedding_path": path.name,
        },
        context.run_dir / "diagnostics.json",
    )
    return f"embed: {embedding.size} reference points -> {path}"


COMMANDS: Dict[str, Tuple[str, Callable[[RunContext], str]]] = {
    "crystallize": ("Point clouds at three temperature schedules", _crystallize),
    "energy-decay": ("Squared MMD of Gibbs and MH nodes against n", _energy_decay),
    "variance": ("Variance of single-integrand estimates across replicates", _variance),
    "multimodal": ("Cold and warm runs, plain or annealed, on a circle mixture", _multimodal),
    "concentration": ("Empirical MMD tails across temperature schedules", _concentration),
    "sample": ("One Gibbs draw written as CSV", _sample),
    "embed": ("Kernel embedding reference points written as CSV", _embed),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repulse-quad", description="Quadrature with repulsive Gibbs measures"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    for name, (description, _) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=description, description=description)
        sub.add_argument("--config", required=True, help="JSON run configuration")
        sub.add_argument("--seed", type=int, help="Override the config seed")
        sub.add_argument("--threads", type=int, help="Worker threads for replicate grids")
        sub.add_argument("--log-level", default="INFO", help="Logging level")
        if name in ("sample", "embed"):
            sub.add_argument("--out", help="Output CSV path")
    return parser


def _context(args: argparse.Namespace) -> RunContext:
    overrides = {"seed": args.seed} if args.seed is not None else None
    config = parse_config(args.config, overrides)
    output_root = os.environ.get(OUTPUT_ENV) or config.output_dir
    run_dir = Path(output_root) / config_hash(config)
    try:
        kernel = build_kernel(config.kernel_spec())
        target = config.target_measure()
        settings = config.embedding_settings()
    except ValidationError as e:
        raise ConfigurationError([ConfigIssue("", str(e))]) from None
    if args.threads is not None and args.threads < 1:
        raise ConfigurationError([ConfigIssue("", "--threads must be >= 1")])
    return RunContext(
        config=config,
        run_dir=run_dir,
        kernel=kernel,
        target=target,
        settings=settings,
        threads=args.threads or config.experiment.threads,
        out=Path(args.out) if getattr(args, "out", None) else None,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    load_dotenv()

    timer = Stopwatch()
    try:
        context = _context(args)
        write_json(
            {"config": canonical_document(context.config), "hash": context.hash},
            context.run_dir / "config.json",
        )
        summary = COMMANDS[args.command][1](context)
    except ConfigurationError as e:
        for issue in e.issues:
            logger.error(f"Config error {issue}")
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return 2
    except RepulseQuadError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1

    logger.info(
        f"{args.command} finished in {timer.elapsed():.1f}s, outputs in {context.run_dir}"
    )
    print(summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
