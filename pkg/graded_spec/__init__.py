from graded_spec.ring import (
    GradedMonomial,
    MonomialPrime,
    check_intersection_law,
    check_primality,
    d_plus,
    monomial,
    monomial_primes,
    relevant_primes,
    ring_generators,
)
from graded_spec.charts import (
    ChartContraction,
    FaceLocalizationCheck,
    HomunitFactorization,
    NagspecCertificate,
    chart_contraction,
    degree_zero_generators,
    charts_cover,
    homunit_factorize,
    in_localization,
    restriction_character,
    verify_face_localization,
    verify_nagspec,
)
from graded_spec.sections import (
    ChartGenerator,
    GlobalSections,
    chart_overlaps,
    direct_sum_sections_on_chart,
    global_sections,
    twisted_sections_on_chart,
)
from graded_spec.verification import CertificateRecord, VerificationSuite, verify_all

__all__ = [
    "CertificateRecord",
    "ChartContraction",
    "ChartGenerator",
    "FaceLocalizationCheck",
    "GlobalSections",
    "GradedMonomial",
    "HomunitFactorization",
    "MonomialPrime",
    "NagspecCertificate",
    "VerificationSuite",
    "chart_contraction",
    "chart_overlaps",
    "degree_zero_generators",
    "charts_cover",
    "check_intersection_law",
    "check_primality",
    "d_plus",
    "direct_sum_sections_on_chart",
    "global_sections",
    "homunit_factorize",
    "in_localization",
    "monomial",
    "monomial_primes",
    "relevant_primes",
    "restriction_character",
    "ring_generators",
    "twisted_sections_on_chart",
    "verify_all",
    "verify_face_localization",
    "verify_nagspec",
]
