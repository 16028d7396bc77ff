"""Adam optimizer with bias-corrected, exponentially decayed moments."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from shotscore.config import ADAM_ALPHA, ADAM_BETA1, ADAM_BETA2, ADAM_EPSILON
from shotscore.errors import ConfigError, ShapeError, StateError
from shotscore.tensor import Tensor

MAX_STEP = 2**63 - 1


@dataclass(frozen=True)
class AdamConfig:
    alpha: float = ADAM_ALPHA
    beta1: float = ADAM_BETA1
    beta2: float = ADAM_BETA2
    epsilon: float = ADAM_EPSILON

    def __post_init__(self):
        if self.alpha <= 0:
            raise ConfigError("alpha", f"must be positive, got {self.alpha}")
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ConfigError(name, f"must be in (0, 1), got {value}")
        if self.epsilon <= 0:
            raise ConfigError("epsilon", f"must be positive, got {self.epsilon}")


@dataclass
class AdamState:
    """First/second moment accumulators keyed by parameter name."""

    config: AdamConfig = field(default_factory=AdamConfig)
    m: dict[str, Tensor] = field(default_factory=dict)
    v: dict[str, Tensor] = field(default_factory=dict)
    t: int = 0

    @classmethod
    def zeros_like(
        cls, params: dict[str, Tensor], config: AdamConfig | None = None
    ) -> AdamState:
        return cls(
            config=config or AdamConfig(),
            m={name: np.zeros_like(p) for name, p in params.items()},
            v={name: np.zeros_like(p) for name, p in params.items()},
        )


def adam_step(
    params: dict[str, Tensor], grads: dict[str, Tensor], state: AdamState
) -> tuple[dict[str, Tensor], AdamState]:
    """Apply one Adam update to every parameter, in place.

    m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2,
    w <- w - alpha * m_hat / (sqrt(v_hat) + eps) with m_hat, v_hat the
    bias-corrected moments at step t.
    """
    if state.t >= MAX_STEP:
        raise StateError("Adam step counter overflow")
    if params.keys() != state.m.keys():
        raise ShapeError(
            f"optimizer state covers {sorted(state.m)}, params are {sorted(params)}"
        )

    cfg = state.config
    t = state.t + 1
    correction1 = 1.0 - cfg.beta1**t
    correction2 = 1.0 - cfg.beta2**t

    for name, w in params.items():
        g = grads[name]
        if g.shape != w.shape:
            raise ShapeError(f"{name}: gradient {g.shape} vs parameter {w.shape}")
        m = state.m[name]
        v = state.v[name]
        m *= cfg.beta1
        m += (1.0 - cfg.beta1) * g
        v *= cfg.beta2
        v += (1.0 - cfg.beta2) * (g * g)
        m_hat = m / correction1
        v_hat = v / correction2
        w -= (cfg.alpha * m_hat / (np.sqrt(v_hat) + cfg.epsilon)).astype(
            w.dtype, copy=False
        )

    state.t = t
    return params, state
