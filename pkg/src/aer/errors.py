"""Exception types raised across the package."""


class AerError(Exception):
    """Base class for every error raised by :mod:`aer`."""


class ZeroInverse(AerError, ZeroDivisionError):
    pass


class BadDimension(AerError, ValueError):
    pass


class DimensionMismatch(AerError, ValueError):
    pass


class MatrixParseError(AerError, ValueError):
    pass


class BadCandidate(AerError, ValueError):
    pass


class BadSampleCount(AerError, ValueError):
    pass


class NotAnInverse(AerError, ValueError):
    pass


class NotInvertible(AerError, ValueError):
    pass


class IndexOutOfRange(AerError, IndexError):
    pass


class BadParameters(AerError, ValueError):
    pass


class PrivateElementSingular(AerError):
    """The evaluated private word has zero tensor determinant."""


class KeyInversionFailed(AerError):
    """Bob's pre-key could not be inverted."""


class FrameError(AerError, ValueError):
    """Malformed wire frame."""


class BadMagic(FrameError):
    pass


class BadVersion(FrameError):
    pass


class BadType(FrameError):
    pass


class TruncatedFrame(FrameError):
    pass


class TrailingBytes(FrameError):
    pass


class LengthMismatch(FrameError):
    pass


class ProtocolError(AerError):
    """Unexpected message or key mismatch during a handshake."""
