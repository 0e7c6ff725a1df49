"""Exception hierarchy shared by every stage of the package."""


class VCSSError(Exception):
    """Base class for all errors raised by :mod:`vcss`."""


class GraphFormatError(VCSSError):
    """Malformed graph file; ``line`` is 1-based, or ``None`` for header problems."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(VCSSError):
    """No object with the requested property exists on this host."""


class InfeasibleInput(InfeasibleError):
    """The input graph is not 2-vertex-connected."""


class NotStructured(VCSSError):
    """An operation that needs a structured host was given something else."""


class ResourceExhausted(VCSSError):
    """A search exceeded its node budget or an enumeration cap."""

    def __init__(self, message, nodes=None):
        self.nodes = nodes
        super().__init__(message)


class PreconditionViolated(VCSSError):
    """An operation's documented input contract does not hold."""


class NotA2EdgeCover(PreconditionViolated):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has degree < 2 in the edge set")


class CaseMismatch(PreconditionViolated):
    """A reducer case was invoked on a cover that does not meet its condition."""


class InvariantError(VCSSError, AssertionError):
    """An internal guarantee failed; indicates a bug or a non-structured host."""
