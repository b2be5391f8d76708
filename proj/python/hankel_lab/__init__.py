"""Numerical workbench for spectra and integrated densities of states of
Hankel integral operators: special functions, finite sections, Floquet
band structures and the random Kronig-Penney-type ensemble."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
