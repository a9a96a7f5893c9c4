"""Extremal timelike surfaces in Minkowski space from orthogonal gauges."""

from ._core import *  # noqa: F401,F403
from ._core import NumericalError, PreconditionError, SchemaError

__all__ = [name for name in dir() if not name.startswith("_")]
