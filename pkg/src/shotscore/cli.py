"""Command-line interface for shotscore."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table

from shotscore import __version__
from shotscore.config import (
    EXIT_IO,
    EXIT_OK,
    METRICS_DIR,
    SCORE_SCALE,
    SCORES_DIR,
    SPLIT_FILE,
    SUMMARIES_DIR,
    TRAIN_LOG_FILE,
)
from shotscore.datapipe import (
    FrameLoader,
    VideoDataset,
    ingest,
    split,
    synth_generate,
    worker_count,
)
from shotscore.errors import DatasetValidationError, GradCheckError, ManifestError, ShotScoreError
from shotscore.logs import configure_logging
from shotscore.network import build_network, glorot_init, load_checkpoint
from shotscore.pipeline import evaluate_curve, score_curve, summarize_curve
from shotscore.runconfig import RunConfig, resolve_config
from shotscore.scoring import (
    MetricsReport,
    ScoreCurve,
    read_score_curve,
    write_json,
    write_score_curve,
)
from shotscore.tensor import FLOAT64, Rng
from shotscore.training import gradcheck, train

logger = logging.getLogger(__name__)

# argparse dests that are not RunConfig fields
_CLI_ONLY = {"command", "config", "verbose", "quiet"}


def _loader(config: RunConfig) -> FrameLoader:
    return FrameLoader(config.resize_side, config.input_side)


def _dataset(config: RunConfig) -> VideoDataset:
    return ingest(config.manifest_path, config.annotations_path, config.shot_length)


def _split(config: RunConfig, dataset: VideoDataset) -> tuple[VideoDataset, VideoDataset]:
    return split(
        dataset,
        Rng(config.seed).spawn("split"),
        config.test_fraction,
        config.min_train_per_genre,
        config.min_test_per_genre,
    )


def _test_ids(config: RunConfig, dataset: VideoDataset) -> list[str]:
    """Held-out ids from ``split.json``, or the seeded split if it is absent."""
    path = config.out / SPLIT_FILE
    if not path.exists():
        return sorted(_split(config, dataset)[1].ids)
    try:
        test = json.loads(path.read_text(encoding="utf-8"))["test"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ManifestError(f"{path.name}: malformed split file") from exc
    return sorted(dataset.subset(test).ids)


def _read_curves(config: RunConfig) -> list[ScoreCurve]:
    scores_dir = config.out / SCORES_DIR
    paths = sorted(scores_dir.glob("*.csv"))
    if not paths:
        raise DatasetValidationError(f"no score curves under {scores_dir}; run predict first")
    return [read_score_curve(path) for path in paths]


def _metrics_table(reports: list[MetricsReport], mean: MetricsReport) -> Table:
    table = Table(title=f"Evaluation ({mean.variant} F, {mean.summary_fraction:.0%} summaries)")
    for column in ("video", "MAE", "AEV", "F", "relative F", "uniform F"):
        table.add_column(column, justify="left" if column == "video" else "right")

    def row(report: MetricsReport) -> list[str]:
        relative = "-" if report.relative_f is None else f"{report.relative_f:.4f}"
        uniform = "-" if report.uniform_f is None else f"{report.uniform_f:.4f}"
        return [
            report.video_id,
            f"{report.mae:.4f}",
            f"{report.aev:.4f}",
            f"{report.f_measure:.4f}",
            relative,
            uniform,
        ]

    for report in reports:
        table.add_row(*row(report))
    table.add_section()
    table.add_row(*row(mean), style="bold")
    return table


def cmd_synth(config: RunConfig, console: Console) -> int:
    dataset = synth_generate(
        config.out,
        config.synth_videos,
        config.synth_frames,
        config.synth_side,
        Rng(config.seed).spawn("synth"),
        n_genres=config.synth_genres,
        noise=config.synth_noise,
        channels=config.channels,
        shot_length=config.shot_length,
    )
    frames = sum(video.frame_count for video in dataset)
    console.print(f"Wrote {len(dataset)} videos ({frames} frames) to {config.out}")
    return EXIT_OK


def cmd_train(config: RunConfig, console: Console) -> int:
    dataset = _dataset(config)
    train_set, test_set = _split(config, dataset)
    write_json({"test": test_set.ids, "train": train_set.ids}, config.out / SPLIT_FILE)

    rng = Rng(config.seed)
    net = glorot_init(
        build_network(
            config.input_side, config.channels, config.network_config(dataset.score_scale)
        ),
        rng.spawn("init"),
    )
    run = train(net, train_set, _loader(config), config.train_config(), rng.spawn("train"), config.out)
    run.write_log(config.out / TRAIN_LOG_FILE)

    final = run.log[-1].batch_loss if run.log else math.nan
    console.print(
        f"Trained {run.iterations} iterations on {len(train_set)} videos; "
        f"final batch loss {final:.6f}"
    )
    return EXIT_OK


def cmd_predict(config: RunConfig, console: Console) -> int:
    dataset = _dataset(config)
    test_ids = _test_ids(config, dataset)
    net = build_network(
        config.input_side, config.channels, config.network_config(dataset.score_scale)
    )
    load_checkpoint(config.checkpoint_path, net)
    loader = _loader(config)

    for video_id in test_ids:
        curve = score_curve(net, loader, dataset.by_id(video_id), config.smooth_window)
        path = write_score_curve(curve, config.out / SCORES_DIR / f"{video_id}.csv")
        logger.debug("wrote %s", path)
    console.print(f"Scored {len(test_ids)} test videos into {config.out / SCORES_DIR}")
    return EXIT_OK


def cmd_evaluate(config: RunConfig, console: Console) -> int:
    dataset = _dataset(config)
    curves = _read_curves(config)

    def evaluate_one(curve: ScoreCurve) -> MetricsReport:
        return evaluate_curve(
            curve,
            dataset.by_id(curve.video_id),
            fraction=config.summary_fraction,
            variant=config.f_variant,
            reference_f=config.reference_f,
        )

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        reports = sorted(pool.map(evaluate_one, curves), key=lambda r: r.video_id)

    metrics_dir = config.out / METRICS_DIR
    for report in reports:
        write_json(report.to_dict(), metrics_dir / f"{report.video_id}.json")
    mean = MetricsReport.mean(reports)
    write_json(
        {"mean": mean.to_dict(), "videos": [r.to_dict() for r in reports]},
        metrics_dir / "summary.json",
    )
    logger.info(
        "mean over %d videos: mae=%.4f aev=%.4f f=%.4f",
        len(reports),
        mean.mae,
        mean.aev,
        mean.f_measure,
    )
    console.print(_metrics_table(reports, mean))
    return EXIT_OK


def cmd_summarize(config: RunConfig, console: Console) -> int:
    curves = _read_curves(config)
    table = Table(title=f"Summaries ({config.summary_fraction:.0%} of shots)")
    table.add_column("video")
    table.add_column("shots", justify="right")
    table.add_column("selected", justify="right")
    table.add_column("segments")

    for curve in curves:
        payload = summarize_curve(curve, config.summary_fraction, config.shot_length)
        write_json(payload, config.out / SUMMARIES_DIR / f"{curve.video_id}.json")
        table.add_row(
            curve.video_id,
            str(len(payload["selected"])),
            str(len(payload["selected_shots"])),
            " ".join(f"[{start},{end})" for start, end in payload["segments"]),
        )
    console.print(table)
    return EXIT_OK


def cmd_gradcheck(config: RunConfig, console: Console) -> int:
    rng = Rng(config.seed)
    net = glorot_init(
        build_network(
            config.input_side, config.channels, config.network_config(), dtype=FLOAT64
        ),
        rng.spawn("init"),
    )
    if config.checkpoint is not None:
        load_checkpoint(config.checkpoint, net)

    shape = (config.input_side, config.input_side, config.channels)
    frame = rng.spawn("frame").uniform(0.0, 1.0, shape, FLOAT64)
    target = float(rng.spawn("target").uniform(0.0, float(SCORE_SCALE), (1,), FLOAT64)[0])
    report = gradcheck(
        net,
        frame,
        target,
        rng.spawn("gradcheck"),
        n_params=config.gradcheck_params,
        tolerance=config.gradcheck_tolerance,
    )

    table = Table(title=f"Gradient check (side {config.input_side}, float64)")
    table.add_column("parameters checked", justify="right")
    table.add_column("kink skips", justify="right")
    table.add_column("max relative error", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_row(
        str(report.checked),
        str(report.skipped_kinks),
        f"{report.max_rel_error:.3e}",
        f"{report.tolerance:.1e}",
    )
    console.print(table)

    if not report.passed:
        raise GradCheckError(
            f"max relative error {report.max_rel_error:.3e} exceeds tolerance "
            f"{report.tolerance:.1e}"
        )
    return EXIT_OK


COMMANDS: dict[str, Callable[[RunConfig, Console], int]] = {
    "synth": cmd_synth,
    "train": cmd_train,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "summarize": cmd_summarize,
    "gradcheck": cmd_gradcheck,
}


def _common_options() -> argparse.ArgumentParser:
    """Options shared by every subcommand; unset flags stay ``None``."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, default=None, help="Flat key=value config file")
    parser.add_argument("--profile", choices=["paper", "desk"], default=None, help="Size profile")
    parser.add_argument("--seed", type=int, default=None, help="Random seed")
    parser.add_argument("--out", type=Path, default=None, help="Output root directory")
    parser.add_argument("--epochs", type=int, default=None, help="Training epochs")
    parser.add_argument("--batch-size", type=int, default=None, help="Frames per mini-batch")
    parser.add_argument("--max-iterations", type=int, default=None, help="Stop after N iterations (0 = no cap)")
    parser.add_argument("--alpha", type=float, default=None, help="Adam step size")
    parser.add_argument("--input-side", type=int, default=None, help="Network input side (multiple of 4)")
    parser.add_argument("--resize-side", type=int, default=None, help="Resize side before cropping")
    parser.add_argument(
        "--no-augment",
        dest="augment",
        action="store_const",
        const=False,
        default=None,
        help="Disable dihedral augmentation",
    )
    parser.add_argument("--smooth-window", type=int, default=None, help="Odd smoothing window (1 = off)")
    parser.add_argument("--summary-fraction", type=float, default=None, help="Summary length as a fraction of shots")
    parser.add_argument("--f-variant", choices=["paper", "standard"], default=None, help="Precision/recall definition")
    parser.add_argument("--reference-f", type=float, default=None, help="Reference F for relative F")
    parser.add_argument("--manifest", type=Path, default=None, help="Manifest JSON (default <out>/manifest.json)")
    parser.add_argument("--annotations", type=Path, default=None, help="Annotation CSV (default <out>/annotations.csv)")
    parser.add_argument("--checkpoint", type=Path, default=None, help="Checkpoint (default <out>/checkpoint.fckp)")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shotscore", description="Shot importance scoring and video summarization"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More log output")
    parser.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")

    common = _common_options()
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("synth", parents=[common], help="Generate a synthetic brightness dataset")
    subparsers.add_parser("train", parents=[common], help="Train the network on the training split")
    subparsers.add_parser("predict", parents=[common], help="Score every frame of the test videos")
    subparsers.add_parser("evaluate", parents=[common], help="MAE, AEV and F-measure per test video")
    subparsers.add_parser("summarize", parents=[common], help="Select summary shots per video")
    subparsers.add_parser("gradcheck", parents=[common], help="Check backprop against finite differences")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(-1 if args.quiet else args.verbose)
    console = Console()

    overrides: dict[str, Any] = {
        key: value for key, value in vars(args).items() if key not in _CLI_ONLY
    }
    try:
        config = resolve_config(args.config, overrides)
        config.write()
        return COMMANDS[args.command](config, console)
    except ShotScoreError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO
