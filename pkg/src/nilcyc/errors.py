"""Exception hierarchy shared by all modules."""


class NilcycError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NilcycError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ResonanceError(NilcycError):
    """A divisor vanishes (or is below tolerance) because of a resonance."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class OmegaBigPresent(NilcycError):
    """A leading monomial carries an Omega factor."""


class ShapeError(NilcycError):
    """A monomial sum does not have the shape a theorem requires."""


class PEqualsOne(ShapeError):
    """The p >= 2 argument was called with p = 1."""


class ParamError(NilcycError, ValueError):
    """Inconsistent template or family parameters."""


class MissingConcreteRemainder(NilcycError):
    """Numeric evaluation needs a concrete remainder that was not supplied."""


class DegreeOverflow(NilcycError):
    """Requested truncation degree exceeds the configured maximum."""


class DegenerateA(NilcycError, ValueError):
    """The blow-up singular points coalesce (a = 1/2)."""


class StiffnessError(NilcycError):
    """Integration exceeded its step budget."""


class CompositionDomainError(NilcycError):
    """A composed map was evaluated outside the domain of one of its pieces."""


class QuadratureFailure(NilcycError):
    """Adaptive quadrature did not reach the requested tolerance."""


class PoleError(NilcycError, ValueError):
    """A Gamma function argument is a non-positive integer."""


class SchemaError(NilcycError, ValueError):
    """A JSON input does not match the expected schema.

    ``pointer`` is the JSON pointer of the offending field.
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
