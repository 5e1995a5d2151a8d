"""Exception hierarchy shared by every twistlab module."""


class TwistlabError(Exception):
    """Base class for all errors raised by twistlab."""


class DuplicateName(TwistlabError):
    pass


class UnknownGenerator(TwistlabError):
    pass


class JacobiViolation(TwistlabError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        super().__init__("Jacobi identity fails on %s: residual %s" % (triple, residual))


class ConstraintViolation(TwistlabError):
    pass


class BracketMismatch(TwistlabError):
    def __init__(self, pair, lhs, rhs):
        self.pair = pair
        self.lhs = lhs
        self.rhs = rhs
        super().__init__("bracket of %s not preserved: image of bracket %s, bracket of images %s"
                         % (pair, lhs, rhs))


class NotNilpotent(TwistlabError):
    pass


class ArityMismatch(TwistlabError):
    pass


class OrderViolation(TwistlabError):
    """A series that must start at xi^1 has a nonzero constant term."""


class UnitViolation(TwistlabError):
    """A series that must start with the unit tensor does not."""


class OrderMismatch(TwistlabError):
    """Two series with different truncation orders were combined."""


class DeltaZero(TwistlabError):
    pass


class MissingSigma(TwistlabError):
    pass


class NonInvertibleV(TwistlabError):
    pass


class NotFirstOrder(TwistlabError):
    pass


class DimensionMismatch(TwistlabError):
    pass


class ParseError(TwistlabError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)


class NoSigmaContext(TwistlabError):
    pass


class ConfigError(TwistlabError):
    pass
