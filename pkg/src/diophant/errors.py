"""Exception hierarchy.

Every domain failure derives from :class:`DiophantError`; the CLI maps those
to exit status 2.
"""


class DiophantError(Exception):
    """Base class for domain errors."""


# intpoly

class ZeroPolynomialError(DiophantError, ValueError):
    pass


class ZeroConstantTerm(DiophantError, ValueError):
    pass


class NotMonic(DiophantError, ValueError):
    pass


class BadExponent(DiophantError, ValueError):
    pass


# surface

class InvalidSurface(DiophantError, ValueError):
    pass


class DegreeTooLow(InvalidSurface):
    pass


class ZeroLeading(InvalidSurface):
    pass


class NotUnitCoefficients(DiophantError, ValueError):
    pass


class AxisInput(DiophantError, ValueError):
    pass


class NonBaseTag(DiophantError, ValueError):
    pass


# groupoid

class InvalidPoint(DiophantError, ValueError):
    pass


class AxisImage(DiophantError):
    """A generator image landed on ``x*y == 0``; ``point`` is that axis point."""

    def __init__(self, point):
        super().__init__(f"generator image lies on an axis: {point}")
        self.point = point


class IntegralityError(DiophantError, ArithmeticError):
    """An exact division that must succeed did not."""


class CapExceeded(DiophantError, RuntimeError):
    pass


class NotEscaped(DiophantError, ValueError):
    pass


# search

class SearchExhausted(DiophantError, RuntimeError):
    pass


class SeedResidueMismatch(DiophantError, ValueError):
    pass


# parser

class ParseError(DiophantError, ValueError):
    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}\n  {text}\n  {' ' * position}^")
