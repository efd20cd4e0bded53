import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from config.errors import ToriqError
from config.settings import RANDOM_SEED
from cox_quotient import QuotientPresentation, chart_inclusions, codim_check, hat_fan, irrelevant_ideal
from graded_spec.charts import (
    chart_contraction,
    charts_cover,
    homunit_factorize,
    in_localization,
    verify_face_localization,
    verify_nagspec,
)
from graded_spec.ring import check_intersection_law, check_primality, monomial_primes, ring_generators
from graded_spec.sections import chart_overlaps, twisted_sections_on_chart
from support_fn import PicClass

logger = logging.getLogger(__name__)

HOMUNIT_SAMPLES = 100


@dataclass(frozen=True)
class CertificateRecord:
    name: str
    subject: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationSuite:
    """Every certificate produced for one quotient presentation."""

    fan_name: str
    records: list[CertificateRecord] = field(default_factory=list)

    def add(self, name: str, subject, passed: bool, detail: str = ""):
        self.records.append(CertificateRecord(name=name, subject=str(subject), passed=bool(passed), detail=detail))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[CertificateRecord]:
        return [r for r in self.records if not r.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [vars(r) for r in self.records], columns=["name", "subject", "passed", "detail"]
        )

    def summary(self) -> pd.DataFrame:
        """Pass counts per certificate family."""
        frame = self.to_frame()
        if frame.empty:
            return pd.DataFrame(columns=["name", "total", "passed"])
        return (
            frame.groupby("name")["passed"].agg(total="count", passed="sum").reset_index()
        )


def _random_localized_exponents(qp: QuotientPresentation, key, count: int, rng) -> list[tuple[int, ...]]:
    """Random exponents of S_{χ(h_σ)}: combinations of ring generators minus multiples of h_σ."""
    generators = [g.exponent for g in ring_generators(qp)]
    h_sigma = qp.h_dist[key]
    samples = []
    while len(samples) < count and generators:
        coefficients = rng.integers(0, 3, size=len(generators))
        k = int(rng.integers(0, 3))
        x = tuple(
            sum(int(c) * g[j] for c, g in zip(coefficients, generators)) - k * h_sigma[j]
            for j in range(qp.rank)
        )
        if in_localization(qp, key, x):
            samples.append(x)
    return samples


def verify_all(qp: QuotientPresentation, seed: int = RANDOM_SEED) -> VerificationSuite:
    """
    Runs the complete certificate suite: lifted fan, irrelevant ideal, chart
    inclusions, degree-zero localizations, unit factorizations, monomial
    primes, face localizations and chart trivializations.
    """
    fan = qp.fan
    suite = VerificationSuite(fan_name=fan.name)
    rng = np.random.default_rng(seed)
    logger.info(f"🚀 Verifying the quotient presentation of {fan.name}...")

    # 1. Construction certificates
    for name, passed in qp.certificates.items():
        suite.add("construction", name, passed)
    try:
        lifted = hat_fan(qp)
        for name, passed in lifted.certificates.items():
            suite.add("hat_fan", name, passed)
    except ToriqError as e:
        suite.add("hat_fan", fan.name, False, str(e))

    # 2. Irrelevant ideal
    try:
        ideal = irrelevant_ideal(qp, full=True)
        suite.add("irrelevant_radical", fan.name, ideal.certificates_passed)
        suite.add("codimension", fan.name, True, str(codim_check(qp, ideal)))
    except ToriqError as e:
        suite.add("irrelevant_radical", fan.name, False, str(e))
    for inclusion in chart_inclusions(qp):
        suite.add("chart_inclusion", f"{list(inclusion.tau)} < {list(inclusion.sigma)}", inclusion.passed)

    # 3. Degree-zero localizations and unit factorizations
    for key in fan.maximal_keys:
        try:
            suite.add("nagspec", list(key), verify_nagspec(qp, key).passed)
        except ToriqError as e:
            suite.add("nagspec", list(key), False, str(e))
        for x in _random_localized_exponents(qp, key, HOMUNIT_SAMPLES, rng):
            try:
                factorization = homunit_factorize(qp, key, x)
                recomposed = tuple(
                    a + b for a, b in zip(qp.lattice.iota_coordinates(factorization.character), factorization.unit)
                )
                suite.add("homunit", f"{list(key)}:{list(x)}", recomposed == tuple(x))
            except ToriqError as e:
                suite.add("homunit", f"{list(key)}:{list(x)}", False, str(e))

    # 4. Monomial primes
    primes = monomial_primes(qp)
    relevant = [p for p in primes if not p.contains_irrelevant]
    suite.add(
        "prime_bijection",
        fan.name,
        len(relevant) == len(fan.cones) and {p.cone for p in relevant} == set(fan.cones),
        f"{len(primes)} primes, {len(relevant)} avoid B",
    )
    suite.add("d_plus_law", fan.name, check_intersection_law(qp, primes))
    suite.add("primality", fan.name, check_primality(qp, primes, seed=seed))
    suite.add("charts_cover", fan.name, charts_cover(qp, primes))
    for key in fan.maximal_keys:
        try:
            contraction = chart_contraction(qp, key, primes)
            suite.add("chart_contraction", list(key), contraction.passed)
        except ToriqError as e:
            suite.add("chart_contraction", list(key), False, str(e))

    # 5. Face localizations
    for sigma in fan.maximal_keys:
        for tau in fan.cones:
            if tau != sigma and set(tau) <= set(sigma):
                check = verify_face_localization(qp, tau, sigma)
                suite.add("face_localization", f"{list(tau)} < {list(sigma)}", check.passed)

    # 6. Chart trivializations in the degrees of the ring generators
    degrees = sorted({g.degree.coordinates for g in ring_generators(qp)} | {(0,) * qp.lattice.pic_rank})
    for coordinates in degrees:
        alpha = PicClass(coordinates)
        generators = {}
        for key in fan.maximal_keys:
            try:
                generators[key] = twisted_sections_on_chart(qp, alpha, key, primes)
                suite.add("chart_generator", f"{list(key)}@{list(coordinates)}", generators[key].passed)
            except ToriqError as e:
                suite.add("chart_generator", f"{list(key)}@{list(coordinates)}", False, str(e))
        for (a, b), passed in chart_overlaps(qp, generators).items():
            suite.add("chart_overlap", f"{list(a)}|{list(b)}@{list(coordinates)}", passed)

    if suite.passed:
        logger.info(f"✅ All {len(suite.records)} certificates passed for {fan.name}.")
    else:
        logger.error(f"❌ {len(suite.failures)} of {len(suite.records)} certificates failed for {fan.name}.")
    return suite
