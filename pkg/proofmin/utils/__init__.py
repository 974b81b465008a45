"""
Utilities package for proofmin.
"""

from .logger import (
    ProofminLogger,
    StructuredFormatter,
    get_logger,
    get_logging_config,
    log_decorator,
    setup_comprehensive_logging,
)

__all__ = [
    "get_logger",
    "setup_comprehensive_logging",
    "get_logging_config",
    "log_decorator",
    "ProofminLogger",
    "StructuredFormatter",
]
