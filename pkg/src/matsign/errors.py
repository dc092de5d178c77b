"""Exception types raised by the solver."""


class MatsignError(Exception):
    """Base class for all solver errors."""


class DimensionError(MatsignError, ValueError):
    """Operands have incompatible shapes."""


class DomainError(MatsignError, ValueError):
    """An argument lies outside the domain of an operation."""


class ParseError(MatsignError, ValueError):
    """A matrix literal could not be parsed."""


class CapacityError(MatsignError, RuntimeError):
    """Input exceeds an exponential-cost guard."""


class CertificationError(MatsignError, RuntimeError):
    """A post-hoc check of a computed signing failed."""
