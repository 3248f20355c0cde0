"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all errors raised by equigeom."""


class DescriptorMismatch(AlgebraError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class InfiniteField(AlgebraError):
    pass


class InvalidField(AlgebraError):
    pass


class ArityMismatch(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class NonUnivariate(AlgebraError):
    pass


class ResourceLimit(AlgebraError):
    """A configured step, enumeration or search budget was exhausted."""


class HasRationalRoot(AlgebraError):
    def __init__(self, root):
        super().__init__(f"polynomial has a root in the base field: {root}")
        self.root = root


class CommonZeroExists(AlgebraError):
    def __init__(self, point):
        super().__init__(f"polynomials share the zero {tuple(str(c) for c in point)}")
        self.point = point


class CertificateInvalid(AlgebraError):
    pass


class AmbientMismatch(AlgebraError):
    pass


class NonSpecialAmbient(AlgebraError):
    pass


class NotSpecialMaximal(AlgebraError):
    pass


class ZeroFunction(AlgebraError):
    pass


class PointNotOnVariety(AlgebraError):
    pass


class DenominatorVanishes(AlgebraError):
    pass


class ImageNotInTarget(AlgebraError):
    pass


class ParseError(AlgebraError):
    """Malformed textual input, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        self.message = message
        where = f"line {line}, column {column}"
        tail = f" (expected {expected})" if expected else ""
        super().__init__(f"{where}: {message}{tail}")
