"""Exception types raised by hankel_asym."""


class HankelAsymError(Exception):
    """Base class for all library errors."""


class DomainError(HankelAsymError, ValueError):
    """An argument lies outside the region where a quantity is defined."""


class SeriesNotConverged(HankelAsymError, ArithmeticError):
    pass


class QuadratureNotConverged(HankelAsymError, ArithmeticError):
    pass


class DimensionTooLarge(HankelAsymError, ValueError):
    pass


class EigensolverFailed(HankelAsymError, ArithmeticError):
    pass


class SingularMatrix(HankelAsymError, ArithmeticError):
    pass


class InsufficientData(HankelAsymError, ValueError):
    pass


class SymbolError(HankelAsymError, ValueError):
    """A symbol violates the structural assumptions (bound, distinct jumps)."""


class ConfigError(HankelAsymError, ValueError):
    pass
