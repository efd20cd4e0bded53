import pytest

from config.errors import ErrorCode, ToriqError
from config.settings import (
    DEFAULT_SEARCH_BOUND,
    ESCALATED_SEARCH_BOUND,
    EXIT_CERTIFICATE,
    EXIT_PARSE,
    EXIT_QUOTIENT,
    EXIT_VALIDATION,
    SEARCH_BOUND_ENV_VAR,
    get_escalated_bound,
    get_search_bound,
)


def test_search_bound_defaults(monkeypatch):
    """Without an override the default bounds apply."""
    monkeypatch.delenv(SEARCH_BOUND_ENV_VAR, raising=False)
    assert get_search_bound() == DEFAULT_SEARCH_BOUND
    assert get_escalated_bound(DEFAULT_SEARCH_BOUND) == ESCALATED_SEARCH_BOUND
    assert get_escalated_bound(100) == 100


def test_search_bound_override(monkeypatch):
    """The environment variable overrides the search bound."""
    monkeypatch.setenv(SEARCH_BOUND_ENV_VAR, "30")
    assert get_search_bound() == 30


@pytest.mark.parametrize("raw", ["abc", "0", "-4"])
def test_invalid_search_bound_is_ignored(monkeypatch, caplog, raw):
    """Unusable overrides fall back to the default with a log line."""
    # 1. Arrange
    monkeypatch.setenv(SEARCH_BOUND_ENV_VAR, raw)

    # 2. Act
    bound = get_search_bound()

    # 3. Assert
    assert bound == DEFAULT_SEARCH_BOUND
    assert "Ignoring" in caplog.text


@pytest.mark.parametrize(
    "code, expected",
    [
        (ErrorCode.PARSE_ERROR, EXIT_PARSE),
        (ErrorCode.IO_ERROR, EXIT_PARSE),
        (ErrorCode.BAD_INTERSECTION, EXIT_VALIDATION),
        (ErrorCode.SPAN_DEFICIENT, EXIT_VALIDATION),
        (ErrorCode.TORSION_PIC, EXIT_QUOTIENT),
        (ErrorCode.NOT_ENOUGH_CARTIER, EXIT_QUOTIENT),
        (ErrorCode.CERTIFICATE_FAILURE, EXIT_CERTIFICATE),
    ],
)
def test_exit_codes(code, expected):
    """Each error code maps to its process exit code."""
    assert code.exit_code == expected


def test_error_carries_details():
    """Errors are ValueErrors that serialize their details."""
    error = ToriqError(ErrorCode.TORSION_PIC, "Pic has torsion.", {"torsion_invariants": [2]})
    assert isinstance(error, ValueError)
    assert str(error) == "TORSION_PIC: Pic has torsion."
    assert error.to_dict() == {
        "code": "TORSION_PIC",
        "message": "Pic has torsion.",
        "details": {"torsion_invariants": [2]},
    }
