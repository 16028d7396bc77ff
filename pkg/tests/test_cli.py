"""Tests for the command-line interface."""

import csv
import json
from unittest.mock import patch

import numpy as np
import pytest

from shotscore import __version__
from shotscore.cli import build_parser, main
from shotscore.errors import StateError
from shotscore.scoring import ScoreCurve, write_score_curve
from shotscore.training import GradCheckEntry, GradCheckReport

SMALL_RUN = """\
synth_videos=8
synth_frames=60
synth_side=12
synth_genres=2
input_side=8
resize_side=12
epochs=1
batch_size=8
"""


@pytest.fixture
def run_config(tmp_path):
    path = tmp_path / "small.env"
    path.write_text(SMALL_RUN, encoding="utf-8")
    return path


def run_pipeline(config, out):
    for command in ("synth", "train", "predict", "evaluate", "summarize"):
        assert main([command, "--config", str(config), "--out", str(out)]) == 0, command


def test_main_prints_version_and_exits(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert capsys.readouterr().out.strip() == f"shotscore {__version__}"


def test_subcommand_required():
    with pytest.raises(SystemExit) as exc_info:
        main([])
    assert exc_info.value.code == 2


def test_unset_flags_stay_none():
    args = build_parser().parse_args(["train"])
    assert args.batch_size is None
    assert args.augment is None
    assert build_parser().parse_args(["train", "--no-augment"]).augment is False


def test_invalid_batch_size_writes_nothing(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["train", "--out", str(out), "--batch-size", "0"]) == 2
    assert "batch_size" in capsys.readouterr().err
    assert not out.exists()


def test_seed_beyond_64_bits_writes_nothing(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["synth", "--out", str(out), "--seed", str(2**64)]) == 2
    assert "seed" in capsys.readouterr().err
    assert not out.exists()


def test_unknown_config_key(tmp_path, capsys):
    path = tmp_path / "bad.env"
    path.write_text("momentum=0.9\n", encoding="utf-8")
    assert main(["synth", "--config", str(path), "--out", str(tmp_path / "run")]) == 2
    assert "momentum" in capsys.readouterr().err


def test_full_pipeline_is_reproducible(tmp_path, run_config):
    first, second = tmp_path / "a", tmp_path / "b"
    run_pipeline(run_config, first)
    run_pipeline(run_config, second)

    for name in ("split.json", "train_log.csv", "metrics/summary.json", "annotations.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes(), name

    split = json.loads((first / "split.json").read_text())
    assert len(split["test"]) == 2 and len(split["train"]) == 6
    scores = sorted(p.name for p in (first / "scores").glob("*.csv"))
    assert scores == sorted(f"{vid}.csv" for vid in split["test"])
    for name in scores:
        assert (first / "scores" / name).read_bytes() == (second / "scores" / name).read_bytes()
    assert (first / "checkpoint.fckp").read_bytes() == (second / "checkpoint.fckp").read_bytes()
    assert (first / "run_config.env").exists()

    summary = json.loads((first / "metrics" / "summary.json").read_text())
    assert [v["video_id"] for v in summary["videos"]] == sorted(split["test"])
    assert summary["mean"]["mae"] >= 0.0
    for vid in split["test"]:
        assert (first / "summaries" / f"{vid}.json").exists()


def test_evaluate_perfect_predictions(tmp_path, make_synth, capsys):
    dataset = make_synth(n_videos=2, frames=100, name="run")
    out = tmp_path / "run"
    for video in dataset:
        targets = video.frame_targets()
        write_score_curve(
            ScoreCurve(video.video_id, targets, targets, targets),
            out / "scores" / f"{video.video_id}.csv",
        )
    argv = ["evaluate", "--out", str(out), "--f-variant", "standard", "--summary-fraction", "0.5"]
    assert main(argv) == 0
    mean = json.loads((out / "metrics" / "summary.json").read_text())["mean"]
    assert mean["mae"] == pytest.approx(0.0, abs=1e-12)
    assert mean["aev"] == pytest.approx(0.0, abs=1e-12)
    assert mean["f_measure"] == 1.0
    assert mean["relative_f"] is None
    assert "Evaluation" in capsys.readouterr().out

    per_video = json.loads((out / "metrics" / "video000.json").read_text())
    assert per_video["variant"] == "standard"


def test_evaluate_without_scores(tmp_path, make_synth, capsys):
    make_synth(name="run")
    assert main(["evaluate", "--out", str(tmp_path / "run")]) == 3
    assert "predict" in capsys.readouterr().err


def test_summarize_writes_selection(tmp_path):
    out = tmp_path / "run"
    curve = np.concatenate([np.full(50, 1.0), np.full(50, 4.0), np.full(50, 2.0)])
    write_score_curve(ScoreCurve("clip", curve, curve, curve), out / "scores" / "clip.csv")
    assert main(["summarize", "--out", str(out), "--summary-fraction", "0.3"]) == 0
    payload = json.loads((out / "summaries" / "clip.json").read_text())
    assert payload["selected_shots"] == [1]
    assert payload["segments"] == [[50, 100]]


def test_gradcheck_passes(tmp_path, capsys):
    argv = ["gradcheck", "--out", str(tmp_path), "--input-side", "8", "--resize-side", "8"]
    assert main(argv) == 0
    assert "Gradient check" in capsys.readouterr().out


def test_gradcheck_failure_exit_code(tmp_path, capsys):
    report = GradCheckReport(tolerance=1e-4)
    report.entries.append(GradCheckEntry("W1", (0, 0, 0, 0), 1.0, 2.0, 0.5))
    argv = ["gradcheck", "--out", str(tmp_path), "--input-side", "8", "--resize-side", "8"]
    with patch("shotscore.cli.gradcheck", return_value=report):
        assert main(argv) == 4
    assert "exceeds tolerance" in capsys.readouterr().err


def test_io_errors_exit_five(tmp_path, capsys):
    with patch("shotscore.cli.synth_generate", side_effect=PermissionError("denied")):
        assert main(["synth", "--out", str(tmp_path / "run")]) == 5
    assert "denied" in capsys.readouterr().err


def test_state_errors_exit_four(tmp_path, capsys):
    error = StateError("Adam step counter overflow")
    with patch("shotscore.cli.synth_generate", side_effect=error):
        assert main(["synth", "--out", str(tmp_path / "run")]) == 4
    assert "overflow" in capsys.readouterr().err


DESK_RUN = """\
profile=desk
seed=0
epochs=30
max_iterations=500
synth_videos=8
synth_frames=250
synth_genres=2
"""


@pytest.mark.slow
def test_desk_profile_learns_synthetic_brightness(tmp_path):
    config = tmp_path / "desk.env"
    config.write_text(DESK_RUN, encoding="utf-8")
    out = tmp_path / "desk"
    for command in ("synth", "train", "predict", "evaluate"):
        assert main([command, "--config", str(config), "--out", str(out)]) == 0, command

    with (out / "train_log.csv").open(encoding="utf-8", newline="") as handle:
        losses = [float(row["batch_loss"]) for row in csv.DictReader(handle)]
    assert len(losses) == 500
    assert min(losses) < 1e-2

    split = json.loads((out / "split.json").read_text())
    assert len(split["test"]) == 2
    for video_id in split["test"]:
        report = json.loads((out / "metrics" / f"{video_id}.json").read_text())
        assert report["mae"] < 0.5, video_id
