"""Exception types raised by the library."""


class OscillatorError(Exception):
    """Base class for every error raised by oscperiod."""


class ModelError(OscillatorError, ValueError):
    """Ill-formed model parameters or unsupported family for an operation."""


class NotOddError(OscillatorError, ValueError):
    pass


class NonMonotonePotentialError(OscillatorError, ValueError):
    pass


class ConvergenceError(OscillatorError, ArithmeticError):
    """A numerical kernel failed to reach its tolerance."""


class BracketError(OscillatorError, ValueError):
    """Root bracket invalid, or no bracket could be found."""


class NoRootError(OscillatorError, ArithmeticError):
    pass


class StepUnderflowError(ConvergenceError):
    pass
