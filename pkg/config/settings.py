import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)

# --- Project Root ---
ROOT_DIR = Path(__file__).parent.parent

# --- Bundled Fan Corpus ---
CORPUS_DIR = ROOT_DIR / "corpus"

# --- Results Directory ---
RESULTS_DIR = ROOT_DIR / "results"

# --- Certificate Search Configuration ---
# Exponent bound for unit and localization certificates, escalated once on failure.
DEFAULT_SEARCH_BOUND = 12
ESCALATED_SEARCH_BOUND = 48
SEARCH_BOUND_ENV_VAR = "TORIQ_SEARCH_BOUND"

# Random sample size for semigroup primality checks.
PRIMALITY_SAMPLE_SIZE = 200
RANDOM_SEED = 0

# --- CLI Exit Codes ---
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_QUOTIENT = 3
EXIT_CERTIFICATE = 4

# --- Report Configuration ---
TOOL_VERSION = "0.1.0"
REPORT_INDENT = 2
INT64_MAX = 2**63 - 1

# --- Logging ---
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def get_search_bound() -> int:
    """
    Returns the certificate exponent bound, honouring the TORIQ_SEARCH_BOUND
    environment variable when it holds a positive integer.
    """
    raw = os.environ.get(SEARCH_BOUND_ENV_VAR)
    if raw is None:
        return DEFAULT_SEARCH_BOUND
    try:
        bound = int(raw)
    except ValueError:
        logger.warning(
            f"Ignoring {SEARCH_BOUND_ENV_VAR}={raw!r}: not an integer. "
            f"Using default bound {DEFAULT_SEARCH_BOUND}."
        )
        return DEFAULT_SEARCH_BOUND
    if bound < 1:
        logger.warning(
            f"Ignoring {SEARCH_BOUND_ENV_VAR}={bound}: must be positive. "
            f"Using default bound {DEFAULT_SEARCH_BOUND}."
        )
        return DEFAULT_SEARCH_BOUND
    return bound


def get_escalated_bound(bound: int) -> int:
    """The bound used for the single retry after a failed certificate search."""
    return max(bound, ESCALATED_SEARCH_BOUND)
