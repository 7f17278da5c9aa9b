"""HTTP embedding service and cache exporter around a 384-dim sentence encoder."""

__version__ = "0.1.0"

from .app import ServerConfig, create_app
from .encoder import DEFAULT_MODEL_ID, REQUIRED_DIMENSION, load_encoder
from .export import export_cache

__all__ = [
    "__version__",
    "DEFAULT_MODEL_ID",
    "REQUIRED_DIMENSION",
    "ServerConfig",
    "create_app",
    "export_cache",
    "load_encoder",
]
