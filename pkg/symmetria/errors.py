"""
Error types raised by the symmetria modules.
The command line maps every SymmetriaError to exit code 3 and reports the
class name, so each name below is part of the public surface.
"""


class SymmetriaError(Exception):
    """Base class for all computation errors."""


class DegenerateInput(SymmetriaError):
    """The input does not span a polygon with positive area."""


class NonFinite(DegenerateInput):
    """A coordinate is NaN or infinite."""


class ThinPolygon(DegenerateInput):
    """Aspect ratio too large for overlap areas to be resolved."""


class BadParam(SymmetriaError, ValueError):
    """A parameter is outside the documented range."""


class Singularity(SymmetriaError):
    """A closed-form expression hit a vanishing denominator."""


class NotCentrallySymmetric(SymmetriaError):
    pass


class AreaTooLarge(SymmetriaError):
    pass


class NoSignChange(SymmetriaError):
    """The boundary sweep found no usable zero of the skew function."""


class InternalInconsistency(SymmetriaError):
    """An exact identity that must hold did not."""


class PerturbFailed(SymmetriaError):
    pass
