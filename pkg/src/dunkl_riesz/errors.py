"""Exception taxonomy shared by every module and by the CLI exit-code mapping."""


class DunklError(Exception):
    """Base class for all library errors."""

    code = "dunkl-error"


class ParameterOutOfRange(DunklError, ValueError):
    code = "parameter-out-of-range"


class AlphaOutOfRange(ParameterOutOfRange):
    code = "alpha-out-of-range"


class NonPositiveScale(ParameterOutOfRange):
    code = "nonpositive-s"


class NegativeArgument(ParameterOutOfRange):
    code = "negative-argument"


class UnsupportedOrder(ParameterOutOfRange):
    code = "unsupported-order"


class OverlappingCells(DunklError, ValueError):
    code = "overlapping-cells"


class TailBoundExceeded(DunklError, ArithmeticError):
    """The analytic tail estimate at the truncation radius is above tolerance."""

    code = "tail-bound-exceeded"


class ConfigError(DunklError, ValueError):
    code = "config-parse-error"
