from typing import Optional


class PregeometryError(Exception):
    """Root of every error raised by the engine."""


class InputError(PregeometryError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GroupValidationError(InputError):
    def __init__(self, message: str, triple: Optional[tuple] = None):
        self.triple = triple
        super().__init__(message)


class ShapeError(InputError):
    pass


class PreconditionError(InputError):
    pass


class CapacityError(PregeometryError):
    def __init__(self, what: str, value: int, bound: int):
        self.what = what
        self.value = value
        self.bound = bound
        super().__init__(f"{what} {value} exceeds the bound {bound}")


class NotAPregeometry(PregeometryError):
    def __init__(self, report):
        self.report = report
        failed = ", ".join(v.name for v in report.verdicts if not v.passed)
        super().__init__(f"closure operator violates: {failed}")


class NotProjective(PregeometryError):
    def __init__(self, first, second):
        self.lines = (first, second)
        super().__init__("plane has parallel lines")


class NoIntersection(PregeometryError):
    def __init__(self, first, second):
        self.lines = (first, second)
        super().__init__("lines do not meet")


class NotAnAutomorphism(PregeometryError):
    def __init__(self, flat):
        self.flat = flat
        super().__init__("map does not send flats to flats")
