"""Exception hierarchy shared by all modules."""


class DesignError(Exception):
    """Base class for every error raised by ftdesigns."""


class NotPrime(DesignError, ValueError):
    pass


class BadDegree(DesignError, ValueError):
    pass


class ReduciblePolynomial(DesignError, ValueError):
    pass


class ZeroInverse(DesignError, ZeroDivisionError):
    pass


class ZeroArgument(DesignError, ValueError):
    pass


class FieldMismatch(DesignError, ValueError):
    pass


class SingularMatrix(DesignError, ValueError):
    pass


class DimensionMismatch(DesignError, ValueError):
    pass


class DegreeMismatch(DesignError, ValueError):
    pass


class CapExceeded(DesignError, RuntimeError):
    pass


class ParseError(DesignError, ValueError):
    pass


class UnboundLabel(DesignError, KeyError):
    pass


class TrivialBlock(DesignError, ValueError):
    pass


class NotResolvable(DesignError, ValueError):
    """Block sizes or replication numbers are not constant."""


class NotTwoDesign(DesignError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class PreconditionViolated(DesignError, ValueError):
    pass


class ParameterMismatch(DesignError, ValueError):
    pass


class BadCongruence(DesignError, ValueError):
    pass


class BadDivisor(DesignError, ValueError):
    pass


class OddDegree(DesignError, ValueError):
    pass


class SpreadAssemblyFailed(DesignError, RuntimeError):
    pass


class SubgroupSearchFailed(DesignError, RuntimeError):
    pass
