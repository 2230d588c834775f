"""Exceptions raised by transformations."""


class TransformError(ValueError):
    """A transformation cannot be applied; ``step`` names the failing step."""

    def __init__(self, message: str, step: str = ""):
        super().__init__(f"{step}: {message}" if step else message)
        self.step = step


class ShapeError(TransformError):
    """The theta tuple does not have the shape a formula requires."""


class FixedSolutionError(TransformError):
    """Z vanishes identically: the solution is fixed by this Okamoto map."""


class DegenerateFormula(TransformError):
    """A denominator of a transformation formula vanishes identically."""
