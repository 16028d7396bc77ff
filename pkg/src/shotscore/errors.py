"""Exception hierarchy shared by every shotscore module.

Each class carries the process exit code the CLI maps it to.
"""

from shotscore.config import (
    EXIT_CONFIG,
    EXIT_FAILURE,
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_VALIDATION,
)


class ShotScoreError(Exception):
    """Base class for all shotscore errors."""

    exit_code = EXIT_FAILURE


class ConfigError(ShotScoreError, ValueError):
    """A configuration value violates a precondition."""

    exit_code = EXIT_CONFIG

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class StateError(ShotScoreError, RuntimeError):
    """An operation was called in the wrong object state."""

    exit_code = EXIT_NUMERIC


class ShapeError(ShotScoreError, ValueError):
    """Tensor shapes are incompatible with an operation."""

    exit_code = EXIT_VALIDATION


class DatasetValidationError(ShotScoreError, ValueError):
    """Dataset manifest or annotations failed validation."""

    exit_code = EXIT_VALIDATION


class ManifestError(DatasetValidationError):
    """The manifest JSON or annotations CSV is malformed."""


class UnknownVideoError(DatasetValidationError):
    """Annotations reference a video that is not in the manifest."""


class ShotCountError(DatasetValidationError):
    """A video's shot scores do not cover its frames."""


class ScoreRangeError(DatasetValidationError):
    """A ground-truth score lies outside [0, L]."""


class CheckpointError(ShotScoreError, ValueError):
    """A checkpoint does not match the network it is loaded into."""

    exit_code = EXIT_VALIDATION


class NumericError(ShotScoreError, ArithmeticError):
    """A numerical computation failed."""

    exit_code = EXIT_NUMERIC


class DivergenceError(NumericError):
    """Training produced a non-finite loss."""


class GradCheckError(NumericError):
    """Analytic gradients disagree with finite differences."""


class TensorFormatError(ShotScoreError, OSError):
    """A tensor or checkpoint file cannot be decoded."""

    exit_code = EXIT_IO


class BadMagicError(TensorFormatError):
    """File does not start with the expected magic bytes."""


class UnsupportedVersionError(TensorFormatError):
    """File format version is not understood."""


class UnsupportedDtypeError(TensorFormatError):
    """File dtype code is not understood."""


class TruncatedFileError(TensorFormatError):
    """File ends before its declared payload."""
