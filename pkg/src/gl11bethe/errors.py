"""Exception types raised across the package."""


class Gl11Error(Exception):
    """Base class for all package errors."""


class ParseError(Gl11Error, ValueError):
    pass


class NonSplitting(Gl11Error):
    """A polynomial has an irreducible factor of degree >= 2 over the active field."""

    def __init__(self, poly, message=None):
        self.poly = poly
        super().__init__(message or f"polynomial does not split over the field: {poly}")


class NotSymmetric(Gl11Error):
    pass


class PoleAtZero(Gl11Error):
    pass


class DegenerateWeight(Gl11Error):
    pass


class EvaluationAtPole(Gl11Error):
    pass


class DimensionMismatch(Gl11Error):
    pass


class NotInvertibleLeadingTerm(Gl11Error):
    pass


class ZetaVanishes(Gl11Error):
    pass


class OutOfDeskRange(Gl11Error):
    pass


class TailNotVanishing(Gl11Error):
    pass


class EigenvalueNotInField(Gl11Error):
    pass
