"""Exception types shared across the package.

Every recoverable failure raises a named exception so that callers (CLI exit
codes, HTTP status mapping) can branch on the class name.
"""


class PrefPcpError(Exception):
    """Base class for all package errors."""


# --- dataset ingestion -------------------------------------------------------

class DatasetError(PrefPcpError):
    """Base class for parse/validation failures while building a Dataset."""


class MissingHeader(DatasetError):
    pass


class UnknownColumnPrefix(DatasetError):
    def __init__(self, column: str):
        super().__init__(f"column {column!r} must be prefixed 'param:' or 'metric:'")
        self.column = column


class RaggedRow(DatasetError):
    def __init__(self, row: int, expected: int, got: int):
        super().__init__(f"row {row} has {got} cells, expected {expected}")
        self.row = row


class NonNumericCell(DatasetError):
    def __init__(self, row: int, col: int, value: str):
        super().__init__(f"row {row}, column {col}: {value!r} is not a finite number")
        self.row = row
        self.col = col


class EmptyDataset(DatasetError):
    pass


class SchemaViolation(DatasetError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvalidShape(DatasetError):
    pass


# --- numeric core -------------------------------------------------------------

class NumericError(PrefPcpError):
    """Base class for failures of the numeric pipeline (fit, projection)."""


class LengthMismatch(PrefPcpError):
    pass


class EmptySet(PrefPcpError):
    pass


class DegenerateFront(NumericError):
    pass


class InsufficientPoints(NumericError):
    pass


class FitDiverged(NumericError):
    pass


class OutsideBranch(NumericError):
    pass


class OffSurface(NumericError):
    pass


class NonNegativeSlope(NumericError):
    pass


class ProjectionDiverged(NumericError):
    pass


# --- embedding / plotting -----------------------------------------------------

class TooFewPoints(PrefPcpError):
    pass


class OutOfRange(PrefPcpError):
    pass


class DegenerateDimensions(PrefPcpError):
    pass
