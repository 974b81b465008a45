"""
proofmin - anytime branch-and-bound search for shortest resolution
refutations of CNF formulas.
"""

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .utils.logger import get_logger, setup_comprehensive_logging

__version__ = "0.1.0"
__author__ = "proofmin developers"

__all__ = [
    *_core_all,
    "get_logger",
    "setup_comprehensive_logging",
]
