"""Run configuration: profile defaults, key=value files and flag overrides."""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, ValidationInfo, field_validator

from shotscore.config import (
    ADAM_ALPHA,
    ADAM_BETA1,
    ADAM_BETA2,
    ADAM_EPSILON,
    ANNOTATIONS_FILE,
    BATCH_SIZE,
    CHECKPOINT_EVERY,
    CHECKPOINT_FILE,
    CROP_SIDE,
    EPOCHS,
    FRAME_STRIDE,
    GRADCHECK_PARAMS,
    GRADCHECK_TOLERANCE,
    INPUT_CHANNELS,
    KEEP_PROB,
    LOG_EVERY,
    MANIFEST_FILE,
    MIN_TEST_PER_GENRE,
    MIN_TRAIN_PER_GENRE,
    PROFILES,
    RESIZE_SIDE,
    RUN_CONFIG_FILE,
    SCORE_SCALE,
    SHOT_LENGTH,
    SUMMARY_FRACTION,
    TEST_FRACTION,
)
from shotscore.errors import ConfigError
from shotscore.network import NetworkConfig
from shotscore.scoring import FVariant
from shotscore.training import AdamConfig, TrainConfig

DEFAULT_PROFILE = "paper"


class RunConfig(BaseModel):
    """Every knob a subcommand reads, validated up front."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    profile: Literal["paper", "desk"] = DEFAULT_PROFILE
    seed: int = Field(default=0, ge=0, lt=2**64)
    out: Path = Path("runs")

    # frames and network
    input_side: int = CROP_SIDE
    resize_side: int = RESIZE_SIDE
    channels: int = Field(default=INPUT_CHANNELS, ge=1)
    keep_prob: float = Field(default=KEEP_PROB, gt=0.0, le=1.0)

    # training
    epochs: int = Field(default=EPOCHS, ge=0)
    batch_size: int = Field(default=BATCH_SIZE, ge=1)
    alpha: float = Field(default=ADAM_ALPHA, gt=0.0)
    beta1: float = Field(default=ADAM_BETA1, gt=0.0, lt=1.0)
    beta2: float = Field(default=ADAM_BETA2, gt=0.0, lt=1.0)
    epsilon: float = Field(default=ADAM_EPSILON, gt=0.0)
    frame_stride: int = Field(default=FRAME_STRIDE, ge=1)
    augment: bool = True
    checkpoint_every: int = Field(default=CHECKPOINT_EVERY, ge=0)
    max_iterations: int = Field(default=0, ge=0)
    log_every: int = Field(default=LOG_EVERY, ge=0)

    # split
    test_fraction: float = Field(default=TEST_FRACTION, gt=0.0, lt=1.0)
    min_train_per_genre: int = Field(default=MIN_TRAIN_PER_GENRE, ge=1)
    min_test_per_genre: int = Field(default=MIN_TEST_PER_GENRE, ge=1)

    # scoring
    shot_length: int = Field(default=SHOT_LENGTH, ge=1)
    smooth_window: int = 1
    summary_fraction: float = Field(default=SUMMARY_FRACTION, gt=0.0, lt=1.0)
    f_variant: FVariant = FVariant.PAPER
    reference_f: float | None = Field(default=None, gt=0.0)

    # paths (default to files under ``out``)
    manifest: Path | None = None
    annotations: Path | None = None
    checkpoint: Path | None = None

    # gradient check
    gradcheck_params: int = Field(default=GRADCHECK_PARAMS, ge=1)
    gradcheck_tolerance: float = Field(default=GRADCHECK_TOLERANCE, gt=0.0)

    # synthetic data
    synth_videos: int = Field(default=8, ge=1)
    synth_frames: int = Field(default=250, ge=1)
    synth_side: int = Field(default=36, ge=1)
    synth_genres: int = Field(default=2, ge=1)
    synth_noise: float = Field(default=0.05, ge=0.0)

    @field_validator("input_side")
    @classmethod
    def _input_side_multiple_of_four(cls, value: int) -> int:
        if value <= 0 or value % 4:
            raise ValueError(f"must be a positive multiple of 4, got {value}")
        return value

    @field_validator("resize_side")
    @classmethod
    def _resize_covers_crop(cls, value: int, info: ValidationInfo) -> int:
        input_side = info.data.get("input_side")
        if input_side is not None and value < input_side:
            raise ValueError(f"must be >= input_side ({input_side}), got {value}")
        return value

    @field_validator("smooth_window")
    @classmethod
    def _odd_window(cls, value: int) -> int:
        if value < 1 or value % 2 == 0:
            raise ValueError(f"must be an odd integer >= 1, got {value}")
        return value

    @property
    def manifest_path(self) -> Path:
        return self.manifest or self.out / MANIFEST_FILE

    @property
    def annotations_path(self) -> Path:
        return self.annotations or self.out / ANNOTATIONS_FILE

    @property
    def checkpoint_path(self) -> Path:
        return self.checkpoint or self.out / CHECKPOINT_FILE

    def network_config(self, score_scale: int = SCORE_SCALE) -> NetworkConfig:
        return NetworkConfig(keep_prob=self.keep_prob, score_scale=score_scale)

    def adam_config(self) -> AdamConfig:
        return AdamConfig(
            alpha=self.alpha, beta1=self.beta1, beta2=self.beta2, epsilon=self.epsilon
        )

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            batch_size=self.batch_size,
            adam=self.adam_config(),
            frame_stride=self.frame_stride,
            augment=self.augment,
            checkpoint_every=self.checkpoint_every,
            max_iterations=self.max_iterations,
            log_every=self.log_every,
        )

    def to_env(self) -> dict[str, str]:
        """Flat string form; ``None`` becomes an empty value."""
        values: dict[str, str] = {}
        for name, value in self.model_dump().items():
            if value is None:
                values[name] = ""
            elif isinstance(value, bool):
                values[name] = "true" if value else "false"
            elif isinstance(value, float):
                values[name] = repr(value)
            elif isinstance(value, Path):
                values[name] = value.as_posix()
            else:
                values[name] = str(value)
        return dict(sorted(values.items()))

    def write(self, out_dir: str | Path | None = None) -> Path:
        """Archive the config as ``run_config.env`` in ``out_dir`` (default ``out``)."""
        root = Path(out_dir) if out_dir is not None else self.out
        root.mkdir(parents=True, exist_ok=True)
        path = root / RUN_CONFIG_FILE
        text = "".join(f"{key}={value}\n" for key, value in self.to_env().items())
        path.write_text(text, encoding="utf-8")
        return path


def _config_error(exc: ValidationError) -> ConfigError:
    first = exc.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or "config"
    message = first["msg"].removeprefix("Value error, ")
    return ConfigError(field, message)


def _clean(values: Mapping[str, Any]) -> dict[str, Any]:
    return {key: (None if value in ("", None) else value) for key, value in values.items()}


def read_config_file(path: str | Path) -> dict[str, str | None]:
    """Read a flat ``key=value`` file, rejecting keys RunConfig does not know.

    Raises:
        ConfigError: On a missing file or an unknown key.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError("config", f"file not found: {path}")
    values = dict(dotenv_values(path))
    for key in values:
        if key not in RunConfig.model_fields:
            raise ConfigError(key, f"unknown key in {path.name}")
    return values


def resolve_config(
    path: str | Path | None = None, overrides: Mapping[str, Any] | None = None
) -> RunConfig:
    """Merge profile defaults, then the config file, then ``overrides``.

    ``None`` values in ``overrides`` mean "not given" and are ignored.

    Raises:
        ConfigError: Naming the first invalid field.
    """
    file_values = _clean(read_config_file(path)) if path is not None else {}
    flags = {key: value for key, value in (overrides or {}).items() if value is not None}
    for key in flags:
        if key not in RunConfig.model_fields:
            raise ConfigError(key, "unknown setting")

    profile = flags.get("profile") or file_values.get("profile") or DEFAULT_PROFILE
    if profile not in PROFILES:
        raise ConfigError("profile", f"must be one of {sorted(PROFILES)}, got {profile!r}")

    merged = {**PROFILES[profile], **file_values, **flags, "profile": profile}
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        raise _config_error(exc) from exc
