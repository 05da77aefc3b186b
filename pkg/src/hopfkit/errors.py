"""Exception types shared across hopfkit."""


class HopfkitError(Exception):
    """Base class for all library errors."""


class DimensionError(HopfkitError, ValueError):
    """Shapes of vectors, matrices or tensors do not fit together."""


class NoSolutionError(HopfkitError):
    """A linear system that should determine a structure map has no solution."""


class VerificationError(HopfkitError):
    """A structure failed its axiom checks.

    ``report`` carries the failing :class:`hopfkit.report.Report` when one
    was produced.
    """

    def __init__(self, message: str, report=None, stage: str | None = None):
        super().__init__(message)
        self.report = report
        self.stage = stage


class InconsistencyError(HopfkitError):
    """Two independent computations of the same object disagree."""


class FormatError(HopfkitError, ValueError):
    """Malformed input file."""
