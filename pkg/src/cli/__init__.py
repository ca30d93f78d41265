"""
Command-line interface
"""

from .config import RunConfig
from .main import build_parser, dispatch, main

__all__ = ["RunConfig", "build_parser", "dispatch", "main"]
