from .loader import FrameLoader, worker_count
from .records import VideoDataset, VideoRecord, ingest, write_annotations, write_manifest
from .sampling import sample_training_frames
from .split import split
from .synth import synth_generate
from .transforms import (
    augment,
    augment_ops,
    bilinear_resize,
    center_crop,
    expand_augmented,
    inverse_code,
    preprocess,
)

__all__ = [
    "FrameLoader",
    "VideoDataset",
    "VideoRecord",
    "augment",
    "augment_ops",
    "bilinear_resize",
    "center_crop",
    "expand_augmented",
    "ingest",
    "inverse_code",
    "preprocess",
    "sample_training_frames",
    "split",
    "synth_generate",
    "worker_count",
    "write_annotations",
    "write_manifest",
]
