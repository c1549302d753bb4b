"""Python access to the hyperqe C++ core."""

from ._hyperqe import *  # noqa: F401,F403
from ._hyperqe import HqeError, Interval

__all__ = [name for name in dir() if not name.startswith("_")]
