"""Configuration constants for shotscore."""

from typing import Any

# Network architecture
KERNEL_SIZE = 5
CONV_FILTERS = (32, 64, 64)
HIDDEN_UNITS = 10
OUTPUT_UNITS = 1
KEEP_PROB = 0.5
INPUT_CHANNELS = 3

# Adam optimizer
ADAM_ALPHA = 1e-4
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8

# Training loop
BATCH_SIZE = 16
EPOCHS = 10
CHECKPOINT_EVERY = 500
LOG_EVERY = 25

# Frame handling
RESIZE_SIDE = 284
CROP_SIDE = 256
FRAME_STRIDE = 5
AUGMENT_CODES = 8
FRAME_CACHE_BYTES = 256 * 2**20

# Shots and scoring
SCORE_SCALE = 5
SHOT_LENGTH = 50
TRIM_FRACTION = 0.1
SMOOTH_WINDOW = 5
SUMMARY_FRACTION = 0.15
SWEEP_FRACTIONS = (0.05, 0.10, 0.15)

# Dataset split
TEST_FRACTION = 0.3
MIN_TRAIN_PER_GENRE = 3
MIN_TEST_PER_GENRE = 1

# Gradient check
GRADCHECK_PARAMS = 50
GRADCHECK_TOLERANCE = 1e-4
GRADCHECK_STEP = 1e-5
GRADCHECK_FLOOR = 1e-5

# Profiles: values applied before the config file and flags
PROFILES: dict[str, dict[str, Any]] = {
    "paper": {"resize_side": RESIZE_SIDE, "input_side": CROP_SIDE},
    "desk": {"resize_side": 36, "input_side": 32, "alpha": 1e-3, "keep_prob": 1.0},
}

# Process exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4
EXIT_IO = 5

# Environment
THREADS_ENV = "SHOTSCORE_THREADS"

# Output file names
RUN_CONFIG_FILE = "run_config.env"
MANIFEST_FILE = "manifest.json"
ANNOTATIONS_FILE = "annotations.csv"
SPLIT_FILE = "split.json"
TRAIN_LOG_FILE = "train_log.csv"
CHECKPOINT_FILE = "checkpoint.fckp"
CHECKPOINT_DIR = "checkpoints"
SCORES_DIR = "scores"
METRICS_DIR = "metrics"
SUMMARIES_DIR = "summaries"
FRAMES_DIR = "frames"
