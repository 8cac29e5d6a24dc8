"""Decoherent-histories workbench.

Finite-dimensional decoherence functionals over history grids and lattice
path sums, with criteria, probabilities, and records. The heavy lifting
lives in the compiled ``_core`` extension; this package re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
