"""Exception hierarchy shared by every module."""


class ClusterNZError(Exception):
    """Base class for all library errors."""


# arithmetic
class DivisionByZero(ClusterNZError, ZeroDivisionError):
    pass


class ArityMismatch(ClusterNZError, ValueError):
    pass


class AllPointsSingular(ClusterNZError):
    pass


class SingularPoint(ClusterNZError, ZeroDivisionError):
    pass


# seeds and sequences
class NotSkewSymmetrizable(ClusterNZError, ValueError):
    pass


class NotSkewSymmetric(ClusterNZError, ValueError):
    pass


class IllegalQuiver(ClusterNZError, ValueError):
    pass


class IndexOutOfRange(ClusterNZError, IndexError):
    pass


class EmptySequence(ClusterNZError, ValueError):
    pass


class LengthMismatch(ClusterNZError, ValueError):
    pass


# tropical
class SignIncoherent(ClusterNZError, AssertionError):
    """A c-vector with mixed signs. Sign coherence is a theorem, so this is a bug."""


class ZeroVector(ClusterNZError, AssertionError):
    pass


class NotReddening(ClusterNZError, ValueError):
    pass


class NotSignedPermutation(ClusterNZError, ValueError):
    pass


# networks
class NotNilpotent(ClusterNZError, ValueError):
    pass


class NotFullyMutated(ClusterNZError, ValueError):
    pass


# geometry
class NoConvergence(ClusterNZError, RuntimeError):
    pass


class SingularJacobian(ClusterNZError, RuntimeError):
    pass


class NotDynkinShape(ClusterNZError, ValueError):
    pass


class InvariantViolation(ClusterNZError, ValueError):
    pass


class DomainError(ClusterNZError, ValueError):
    pass


class SelfFoldedEdge(ClusterNZError, ValueError):
    pass


class BadIncidence(ClusterNZError, ValueError):
    pass
