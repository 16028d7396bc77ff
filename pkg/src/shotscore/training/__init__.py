from .adam import AdamConfig, AdamState, adam_step
from .gradcheck import GradCheckEntry, GradCheckReport, gradcheck, relative_error
from .loss import l2_loss
from .trainer import LogEntry, Sample, TrainConfig, TrainRun, train, training_samples

__all__ = [
    "AdamConfig",
    "AdamState",
    "GradCheckEntry",
    "GradCheckReport",
    "LogEntry",
    "Sample",
    "TrainConfig",
    "TrainRun",
    "adam_step",
    "gradcheck",
    "l2_loss",
    "relative_error",
    "train",
    "training_samples",
]
