"""Exception hierarchy shared by all todaforms modules."""


class TodaFormsError(Exception):
    """Base class for every error raised by this package."""


class Infeasible(TodaFormsError):
    """A linear system (exact or modulo the integers) has no solution."""


class BasisError(TodaFormsError):
    """No integral echelon basis with unit pivots could be built."""


class NotInSpace(TodaFormsError):
    """A q-series is not the expansion of a form in the given space."""


class PrecisionTooLow(TodaFormsError):
    """The truncation order is below what a decision requires."""


class NoVirtualWeight(TodaFormsError):
    """A divided congruence has no virtual weight n at this precision."""


class NotPTorsion(TodaFormsError):
    """p times the class is not zero, so no p-adapted representative exists."""


class LevelError(TodaFormsError):
    """Operands live at incompatible levels, or a name is unknown at a level."""
