"""Exception hierarchy shared by every module."""


class QLSError(Exception):
    """Base class for all package errors."""


class InputError(QLSError, ValueError):
    """Malformed user input, e.g. an unparsable edge-list line."""


class ParameterError(QLSError, ValueError):
    """Invalid numeric parameters (degree parity, negative radius, ...)."""


class GenerationError(QLSError, RuntimeError):
    """A randomized generator gave up after its retry budget."""


class CapacityError(QLSError, ValueError):
    """A size cap (qubits, brute-force oracle) was exceeded."""


class InvariantError(QLSError, AssertionError):
    """An internal invariant was violated. Signals a bug, never swallowed."""
