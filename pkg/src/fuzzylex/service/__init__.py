from .app import create_app
from .engine import Engine, ServiceConfig

__all__ = ["create_app", "Engine", "ServiceConfig"]
