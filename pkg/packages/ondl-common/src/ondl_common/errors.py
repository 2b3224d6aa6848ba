"""Error hierarchy shared by the engine and the command line.

Each error class carries the process exit code the CLI reports for it.
"""

from __future__ import annotations


class OndlError(Exception):
    """Base class for all ondl errors."""

    exit_code: int = 1


class UsageError(OndlError):
    """Invalid flags or inconsistent run parameters."""

    exit_code = 1


class DataError(OndlError, ValueError):
    """Malformed input files, mismatched dimensions, or infeasible data requests."""

    exit_code = 2


class NumericalError(OndlError, ArithmeticError):
    """Degenerate numerical state such as a zero dictionary."""

    exit_code = 3


class InvariantViolation(NumericalError):
    """A runtime-checked property of the online factorization failed."""


class SamplingError(OndlError, RuntimeError):
    """A sampler could not produce a valid state within its budget."""

    exit_code = 3
