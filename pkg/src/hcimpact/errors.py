"""Exception types shared across the engine.

Two failure classes matter operationally: bad inputs (schema, range or
configuration problems caught before any computation) and numerical
degeneracies discovered mid-computation. The CLI maps them to distinct
exit codes.
"""


class EngineError(Exception):
    """Base class for all engine-raised errors."""


class ValidationError(EngineError):
    """Input data, schema or configuration is invalid."""


class NumericalError(EngineError):
    """A computation hit a degenerate or non-finite condition."""
