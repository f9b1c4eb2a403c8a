"""Exception hierarchy shared across the toolkit."""


class ThermocatError(Exception):
    """Base class for all domain errors raised by thermocat."""


class NotADistribution(ThermocatError):
    """Input vector is not a valid probability distribution."""


class DimensionMismatch(ThermocatError):
    """Operands have incompatible dimensions."""


class DomainError(ThermocatError):
    """Argument outside the mathematical domain of the operation."""


class SupportError(ThermocatError):
    """Support condition violated (zero components where positivity is required)."""


class OverflowToInfinity(ThermocatError):
    """Composition rule received an infinite operand."""


class FullRankRequired(ThermocatError):
    """Reference distribution must have full support."""


class NotRational(ThermocatError):
    """Distribution was not supplied as integer numerators over a common denominator."""


class InvalidM(ThermocatError):
    """Rationalization granularity M must be a positive integer."""


class DegenerateRemainder(ThermocatError):
    """Rationalization remainder component became non-positive; choose a larger M."""


class ScheduleViolation(ThermocatError):
    """Perturbation schedule violates the nesting conditions."""


class OddDimension(ThermocatError):
    """Catalyst dimension must be even for the distributed profile."""


class EpsilonTooLarge(ThermocatError):
    """Return error epsilon violates positivity of the catalyst profile."""


class AlphaOne(ThermocatError):
    """Order alpha = 1 is a pole of this expression; use the scan path instead."""


class ChiOutOfRange(ThermocatError):
    """Classical correlation parameter outside the positivity interval."""


class LambdaOutOfRange(ThermocatError):
    """Coherence amplitude violates positivity of the degenerate block."""


class TargetUnreachable(ThermocatError):
    """Requested mutual information not attainable for any admissible coherence."""
