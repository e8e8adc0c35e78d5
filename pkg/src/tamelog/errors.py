"""Exception hierarchy. Every error carries a stable ``code`` string."""


class TamelogError(Exception):
    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message


class BudgetExceeded(TamelogError):
    code = "BUDGET_EXCEEDED"


class NotInLattice(TamelogError, ValueError):
    code = "NOT_IN_LATTICE"


class NotInMonoid(TamelogError, ValueError):
    code = "NOT_IN_MONOID"


class InvalidFace(TamelogError, ValueError):
    code = "INVALID_FACE"


class InvalidChart(TamelogError, ValueError):
    code = "INVALID_CHART"


class InvalidFan(TamelogError, ValueError):
    code = "INVALID_FAN"


class InvalidModel(TamelogError, ValueError):
    code = "INVALID_MODEL"


class NotApplicable(TamelogError):
    code = "NOT_APPLICABLE"


class InvalidGraph(TamelogError, ValueError):
    code = "INVALID_GRAPH"


class NotContractible(TamelogError, ValueError):
    code = "NOT_CONTRACTIBLE"


class UnsupportedType(TamelogError, ValueError):
    code = "UNSUPPORTED_TYPE"


class NumericInvalid(TamelogError, ValueError):
    code = "NUMERIC_INVALID"


class MissingData(TamelogError, ValueError):
    code = "MISSING_DATA"


class InconsistentInput(TamelogError, ValueError):
    code = "INCONSISTENT"


class InternalMismatch(TamelogError, AssertionError):
    """Two independent computations of the same quantity disagreed."""

    code = "INTERNAL_MISMATCH"


class ParseError(TamelogError, ValueError):
    code = "PARSE_ERROR"


class SchemaError(TamelogError, ValueError):
    code = "SCHEMA_ERROR"


class SemanticError(TamelogError, ValueError):
    code = "SEMANTIC_ERROR"
