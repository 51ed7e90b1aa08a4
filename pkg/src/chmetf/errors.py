"""Exception hierarchy.

Verification failures that are part of normal operation are reported via
:class:`~chmetf.matrix.VerificationReport`; the exceptions below are for
broken preconditions and failed constructions.
"""


class ChmError(Exception):
    """Base class for all library errors."""


class OrderMismatch(ChmError, ValueError):
    pass


class CertificationError(ChmError):
    """A construction failed its own certificate."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConvergenceError(ChmError, ArithmeticError):
    pass


class DephaseError(ChmError, ValueError):
    pass


# frames
class NotASignature(ChmError, ValueError):
    pass


class InconsistentMu(NotASignature):
    pass


class MuOutOfRange(ChmError, ValueError):
    pass


class NonConstantDiagonal(ChmError, ValueError):
    pass


class NotSelfAdjointAfterShift(ChmError, ValueError):
    pass


class ClusterCountMismatch(ChmError):
    pass


class DegenerateK(ChmError, ValueError):
    pass


class RankMismatch(ChmError):
    pass


class NotSquareOrder(ChmError, ValueError):
    pass


class NonIntegerMultiplicity(ChmError, ValueError):
    pass


# lift
class GridShapeMismatch(ChmError, ValueError):
    pass


class SelfAdjointConstraintViolated(ChmError, ValueError):
    pass


class UnknownName(ChmError, KeyError):
    pass


class UnsupportedOrder(ChmError, ValueError):
    pass


# designs
class NotPrime(ChmError, ValueError):
    pass


class WrongResidueClass(ChmError, ValueError):
    pass


class NotADesign(ChmError, ValueError):
    pass


class NotHadamardParameters(NotADesign):
    """A genuine symmetric design whose parameters are not (4m-1, 2m-1, m-1)."""


class NotSkew(ChmError, ValueError):
    pass
