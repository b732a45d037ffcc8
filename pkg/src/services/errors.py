"""
Classification errors

Every failure raised by the services carries a short machine-readable code
and a human readable detail, the same two fields the CLI reports.
"""
from typing import Optional


class ClassificationError(Exception):
    code = "classification_error"

    def __init__(self, detail: str, code: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


class MissingEdge(ClassificationError):
    code = "missing_edge"


class NotContractible(ClassificationError):
    code = "not_contractible"


class NotCoprime(ClassificationError):
    code = "not_coprime"


class OutOfRange(ClassificationError):
    code = "out_of_range"


class NotLogTerminal(ClassificationError):
    code = "not_log_terminal"


class SingularSystem(ClassificationError):
    code = "singular_system"


class NonLogCanonical(ClassificationError):
    code = "non_log_canonical"


class MissingFibration(ClassificationError):
    code = "missing_fibration"


class Unbounded(ClassificationError):
    code = "unbounded"


class NonStandardCoefficient(ClassificationError):
    code = "non_standard_coefficient"


class NotElliptic(ClassificationError):
    code = "not_elliptic"


class UnknownRow(ClassificationError):
    code = "unknown_row"
