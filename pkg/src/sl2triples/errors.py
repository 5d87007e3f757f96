"""Exception hierarchy shared by all layers."""

from __future__ import annotations


class Sl2Error(Exception):
    """Base class for domain errors raised by this package."""


class DimensionMismatch(Sl2Error, ValueError):
    pass


class ShapeMismatch(DimensionMismatch):
    pass


class SizeMismatch(Sl2Error, ValueError):
    pass


class ModulusMismatch(Sl2Error, ValueError):
    pass


class NotNilpotent(Sl2Error, ValueError):
    pass


class PowerNotZero(Sl2Error, ValueError):
    """x**p != 0, so the truncated exponential is not defined."""


class FPowerNotZero(PowerNotZero):
    pass


class NotInvertible(Sl2Error, ValueError):
    pass


class DOutOfRange(Sl2Error, ValueError):
    pass


class RelationsFail(Sl2Error, ValueError):
    """The sl2 bracket relations do not hold exactly."""


class NotInAlgebra(Sl2Error, ValueError):
    pass


class OddRankForSp(Sl2Error, ValueError):
    pass


class InvalidLabel(Sl2Error, ValueError):
    pass


class OutsideMaxVariety(Sl2Error, ValueError):
    pass


class RankTooSmall(Sl2Error, ValueError):
    pass


class BlockDataMissing(Sl2Error, ValueError):
    pass


class HNotDiagonal(Sl2Error, ValueError):
    pass


class NoSolution(Sl2Error, ArithmeticError):
    pass


class BudgetExceeded(Sl2Error, RuntimeError):
    """Raised when an enumeration would exceed its point budget.

    ``partial`` carries whatever was produced before the cut-off and ``spent``
    the number of lattice points already enumerated.
    """

    def __init__(self, message: str, partial=None, spent: int = 0):
        super().__init__(message)
        self.partial = partial if partial is not None else []
        self.spent = spent
