"""shotscore - CNN-based frame-level shot importance for video summarization."""

__version__ = "0.1.0"


def __getattr__(name):
    if name == "build_network":
        from shotscore.network.model import build_network

        return build_network
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
