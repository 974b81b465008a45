"""
Exception hierarchy for proofmin.

Verdict-like outcomes (proof verification, SAT status, search status) are
returned as values; the classes below are reserved for inputs that cannot be
processed at all and for broken internal contracts.
"""

from typing import Optional


class ProofminError(Exception):
    """Base class for all proofmin errors."""


class InputFormatError(ProofminError):
    """A text input could not be parsed; carries the offending line number."""

    def __init__(self, line: Optional[int], message: str):
        self.line = line
        self.message = message
        location = f"line {line}: " if line is not None else ""
        super().__init__(f"{location}{message}")


class DimacsParseError(InputFormatError):
    """Malformed DIMACS CNF input."""


class ProofFormatError(InputFormatError):
    """Malformed resolution proof text."""


class LratParseError(InputFormatError):
    """Malformed LRAT certificate line."""


class UnsupportedRatError(LratParseError):
    """LRAT line uses a RAT hint (negative clause id)."""

    def __init__(self, line: Optional[int]):
        super().__init__(line, "RAT hints are not supported, only RUP lines")


class InvalidCertificateError(ProofminError):
    """An LRAT addition line does not expand into its stated clause."""

    def __init__(self, clause_id: int, message: str):
        self.clause_id = clause_id
        super().__init__(f"clause {clause_id}: {message}")


class NotAProofSetError(ProofminError):
    """The derived clauses cannot be arranged into a layer list."""


class SatInputError(ProofminError):
    """An operation requiring an unsatisfiable input got a satisfiable one."""


class SolverTimeoutError(ProofminError):
    """The DPLL budget ran out before a status was decided."""


class SearchInvariantError(ProofminError):
    """Completion of a known clause set came back satisfiable."""


class GeneratorParameterError(ProofminError, ValueError):
    """Generator parameters are outside the feasible range."""


class ConfigurationError(ProofminError):
    """A search configuration file could not be loaded."""
