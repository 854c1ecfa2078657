"""Exception hierarchy shared by all evaluators."""


class HszeError(Exception):
    """Base class for library errors."""


class ZeroToNegativePower(HszeError, ZeroDivisionError):
    pass


class IllegalLerchPoint(HszeError, ValueError):
    """A Lerch-type sum was requested at a point where it diverges."""


class NonconvergentTau(HszeError, ValueError):
    pass


class PoleHit(HszeError, ValueError):
    """Evaluation point lies (numerically) on a pole."""


class QuadratureNonconvergence(HszeError, ArithmeticError):
    pass


class CasePreconditionViolated(HszeError, ValueError):
    """Parameters fall outside every admissible branch of the series definition."""


class NonconvergenceAtPolicyCap(HszeError, ArithmeticError):
    pass


class InadmissibleParameters(HszeError, ValueError):
    pass


class SymbolRemains(HszeError, ValueError):
    """A ring expression still depends on z where a number was expected."""


class NonconvergentQSeries(HszeError, ValueError):
    pass


class NotCatalogued(HszeError, KeyError):
    pass


class ConfigError(HszeError, ValueError):
    pass
