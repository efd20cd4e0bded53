from fan_model.fan import ConeKey, Fan, cone_containing, star_subfan
from fan_model.validation import ValidationReport, Violation, validate_fan

__all__ = [
    "ConeKey",
    "Fan",
    "ValidationReport",
    "Violation",
    "cone_containing",
    "star_subfan",
    "validate_fan",
]
