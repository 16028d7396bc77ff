"""Sum-of-squares regression loss."""

import numpy as np
import numpy.typing as npt

from shotscore.errors import ShapeError
from shotscore.tensor import Tensor


def l2_loss(preds: npt.ArrayLike, targets: npt.ArrayLike) -> tuple[float, Tensor]:
    """Return ``C = sum((y - y_hat)^2)`` and ``dC/dy_hat = 2 (y_hat - y)``."""
    preds = np.atleast_1d(np.asarray(preds))
    targets = np.atleast_1d(np.asarray(targets, dtype=preds.dtype))
    if preds.shape != targets.shape:
        raise ShapeError(
            f"preds and targets differ in length: {preds.shape} vs {targets.shape}"
        )
    diff = preds - targets
    return float(np.sum(diff * diff)), 2 * diff
