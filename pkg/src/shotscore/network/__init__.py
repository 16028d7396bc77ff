from .checkpoint import load_checkpoint, read_checkpoint, save_checkpoint
from .layers import LayerKind, LayerSpec
from .model import Mode, Network, NetworkConfig, build_network, glorot_init

__all__ = [
    "LayerKind",
    "LayerSpec",
    "Mode",
    "Network",
    "NetworkConfig",
    "build_network",
    "glorot_init",
    "load_checkpoint",
    "read_checkpoint",
    "save_checkpoint",
]
