from cox_quotient.presentation import (
    EnoughCartierReport,
    EnoughCartierRow,
    QuotientPresentation,
    build_quotient,
    check_enough_cartier,
    half_space,
)
from cox_quotient.hat_fan import HatFan, hat_fan
from cox_quotient.irrelevant import (
    ChartInclusion,
    IrrelevantIdeal,
    MonomialIdeal,
    VanishingFace,
    chart_inclusions,
    codim_check,
    face_ray_ids,
    in_face_prime,
    irrelevant_ideal,
    vanishing_components,
)

__all__ = [
    "ChartInclusion",
    "EnoughCartierReport",
    "EnoughCartierRow",
    "HatFan",
    "IrrelevantIdeal",
    "MonomialIdeal",
    "QuotientPresentation",
    "VanishingFace",
    "build_quotient",
    "chart_inclusions",
    "check_enough_cartier",
    "codim_check",
    "face_ray_ids",
    "half_space",
    "hat_fan",
    "in_face_prime",
    "irrelevant_ideal",
    "vanishing_components",
]
