"""Weyl operators, quantum characteristic functions, and central-limit
diagnostics on truncated Fock spaces."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
