"""Training-frame sampling."""

from shotscore.config import FRAME_STRIDE
from shotscore.datapipe.records import VideoRecord


def sample_training_frames(
    video: VideoRecord, stride: int = FRAME_STRIDE
) -> list[tuple[int, float]]:
    """First frame of every strip of ``stride`` consecutive frames, with its target."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    return [
        (index, video.frame_target(index))
        for index in range(0, video.frame_count, stride)
    ]
