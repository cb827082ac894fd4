"""Exception types raised by the package."""


class ShapeError(ValueError):
    """Operand dimensions are not conformal."""


class ParameterError(ValueError):
    """An algorithm parameter is outside its admissible range."""


class ImaginaryResidualTooLarge(ValueError):
    """Inverse transform of a spectral tensor that is not conjugate symmetric."""


class RankNotRevealed(RuntimeError):
    """The rank cap was exhausted before the threshold test fired.

    The partially built report is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FormatError(ValueError):
    """Malformed binary tensor file."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class IngestError(ValueError):
    """An image file could not be ingested."""
