"""Exception hierarchy shared by all modules."""


class TanThetaError(Exception):
    pass


class DomainError(TanThetaError, ValueError):
    """Input lies outside the region where a bound or construction is defined."""


class ConvergenceError(TanThetaError, RuntimeError):
    pass


class TightnessError(TanThetaError, AssertionError):
    """A sharpness witness failed to attain its bound (implementation bug)."""


class DimensionError(TanThetaError, ValueError):
    pass


class DispositionError(TanThetaError, ValueError):
    pass
