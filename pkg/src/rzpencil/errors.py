"""Exception types raised across the package."""


class RzPencilError(Exception):
    """Base class for all package errors."""


class ParseError(RzPencilError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(RzPencilError, ValueError):
    """Incompatible coefficient domains, e.g. two different radicals."""


class DimensionError(RzPencilError, ValueError):
    pass


class PreconditionError(RzPencilError, ValueError):
    """An operation was called on input that violates its contract."""


class SizeCapError(RzPencilError):
    """Symbolic determinant requested above the exact size cap."""


class ImaginaryResidueError(RzPencilError, ArithmeticError):
    """A determinant that must be real came out with imaginary terms."""


class ConeNotWitnessed(RzPencilError):
    """No positive semidefinite direction of full generic rank was found."""


class BlockStructureError(RzPencilError, ArithmeticError):
    """Off-block residue after a cone reduction exceeded tolerance."""


class FormatError(RzPencilError, ValueError):
    """Malformed or inconsistent file content."""
