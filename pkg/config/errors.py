from enum import Enum
from typing import Any

from config.settings import (
    EXIT_CERTIFICATE,
    EXIT_PARSE,
    EXIT_QUOTIENT,
    EXIT_VALIDATION,
)


class ErrorCode(str, Enum):
    """Every failure and violation kind the toolkit reports."""

    NOT_POINTED = "NOT_POINTED"
    ZERO_CONE = "ZERO_CONE"
    UNKNOWN_RAY = "UNKNOWN_RAY"
    SPAN_DEFICIENT = "SPAN_DEFICIENT"
    BAD_INTERSECTION = "BAD_INTERSECTION"
    MISSING_FACE = "MISSING_FACE"
    UNUSED_RAY = "UNUSED_RAY"
    INVALID_FAN = "INVALID_FAN"
    OUTSIDE_SUPPORT = "OUTSIDE_SUPPORT"
    TORSION_PIC = "TORSION_PIC"
    NOT_ENOUGH_CARTIER = "NOT_ENOUGH_CARTIER"
    INTERNAL_INCONSISTENCY = "INTERNAL_INCONSISTENCY"
    CERTIFICATE_FAILURE = "CERTIFICATE_FAILURE"
    NON_INTEGRAL_RESTRICTION = "NON_INTEGRAL_RESTRICTION"
    DEGREE_UNREACHABLE = "DEGREE_UNREACHABLE"
    PARSE_ERROR = "PARSE_ERROR"
    IO_ERROR = "IO_ERROR"

    @property
    def exit_code(self) -> int:
        """The CLI exit status associated with this error."""
        if self in (ErrorCode.PARSE_ERROR, ErrorCode.IO_ERROR):
            return EXIT_PARSE
        if self in (ErrorCode.NOT_ENOUGH_CARTIER, ErrorCode.TORSION_PIC):
            return EXIT_QUOTIENT
        if self in (ErrorCode.CERTIFICATE_FAILURE, ErrorCode.INTERNAL_INCONSISTENCY):
            return EXIT_CERTIFICATE
        return EXIT_VALIDATION


class ToriqError(ValueError):
    """
    Raised for any input or construction failure.

    Args:
        code: The ErrorCode describing the failure.
        message: Human readable explanation.
        details: Optional structured payload (failing cones, invariants, ...).
    """

    def __init__(self, code: ErrorCode, message: str, details: dict[str, Any] | None = None):
        super().__init__(f"{code.value}: {message}")
        self.code = code
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code.value, "message": self.message, "details": self.details}
