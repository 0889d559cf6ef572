"""Lebesgue decomposition and Radon-Nikodym derivatives of states on matrix algebras."""

from ._nclebesgue import *  # noqa: F401,F403
from ._nclebesgue import NclError  # noqa: F401

__version__ = "0.1.0"
