"""
Sections of O(α) and of the twisted modules S(α)~.

The fiber {h ∈ Č ∩ SF : deg h = α} is c0 + ι(P ∩ M) for any lift c0 of α,
where P = {m : <m, n_ρ> + c0(n_ρ) >= 0 for all ρ}. P is handled through its
homogenization {(m, t) : <m, n_ρ> + c0(n_ρ) t >= 0, t >= 0}.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from config.errors import ErrorCode, ToriqError
from cox_quotient import QuotientPresentation
from exact_linalg import LatticeVector, dot, to_vector
from fan_model import ConeKey
from graded_spec.charts import dual_generators, in_localization, restriction_character
from graded_spec.ring import GradedMonomial, MonomialPrime, monomial, relevant_primes
from polyhedral import Cone
from support_fn import PicClass

logger = logging.getLogger(__name__)


@dataclass
class GlobalSections:
    """
    A monomial basis of S_α, or an unbounded fiber.

    Attributes:
        degree: The class α.
        monomials: The degree-α monomials; empty when the fiber is infinite.
        is_infinite: True when S_α is not finite dimensional.
        witness: For an infinite fiber, a nonzero exponent of degree zero in Č
            whose multiples can be added to every section.
    """

    degree: PicClass
    monomials: list[GradedMonomial] = field(default_factory=list)
    is_infinite: bool = False
    witness: LatticeVector | None = None

    def __len__(self) -> int:
        return len(self.monomials)

    def to_dict(self) -> dict:
        return {
            "degree": list(self.degree.coordinates),
            "infinite": self.is_infinite,
            "witness": list(self.witness) if self.witness is not None else None,
            "count": len(self.monomials),
            "monomials": [list(g.exponent) for g in self.monomials],
        }


def _lift(qp: QuotientPresentation, alpha: PicClass) -> LatticeVector:
    c0 = qp.lattice.degree_lift(alpha)
    if c0 is None:
        raise ToriqError(ErrorCode.DEGREE_UNREACHABLE, f"No support function has degree {list(alpha.coordinates)}.")
    return c0


def global_sections(qp: QuotientPresentation, alpha: PicClass) -> GlobalSections:
    """Enumerates the monomials of degree α in S."""
    lattice = qp.lattice
    fan = qp.fan
    d = lattice.lattice_rank
    c0 = _lift(qp, alpha)
    offsets = lattice.values_of(c0)
    rays = fan.rays

    # 1. Homogenized polyhedron; empty when no ray reaches level t > 0
    normals = [tuple(n) + (b,) for n, b in zip(rays, offsets)] + [(0,) * d + (1,)]
    homogenized = Cone.from_inequalities(normals, ambient_rank=d + 1)
    vertices = [
        tuple(Fraction(x, r[d]) for x in r[:d]) for r in homogenized.rays if r[d] > 0
    ]
    if not vertices:
        logger.info(f"S_{list(alpha.coordinates)} is zero.")
        return GlobalSections(degree=alpha)

    # 2. Unbounded fibers
    recession = Cone.from_inequalities(rays, ambient_rank=d)
    directions = list(recession.rays) + list(recession.lineality)
    if directions:
        witness = lattice.iota_coordinates(directions[0])
        logger.warning(f"S_{list(alpha.coordinates)} is infinite; witness {list(witness)}.")
        return GlobalSections(degree=alpha, is_infinite=True, witness=witness)

    # 3. Lattice points of the bounded polytope
    ranges = [
        range(math.floor(min(v[j] for v in vertices)), math.ceil(max(v[j] for v in vertices)) + 1)
        for j in range(d)
    ]
    monomials = []
    for m in itertools.product(*ranges):
        if all(dot(m, n) + b >= 0 for n, b in zip(rays, offsets)):
            exponent = tuple(a + b for a, b in zip(c0, lattice.iota_coordinates(m)))
            monomials.append(monomial(qp, exponent))
    monomials.sort(key=lambda g: g.exponent)
    logger.info(f"S_{list(alpha.coordinates)} has dimension {len(monomials)}.")
    return GlobalSections(degree=alpha, monomials=monomials)


@dataclass
class ChartGenerator:
    """
    The generator g_σ of Γ(D₊(χ(h_σ)), S(α)~) over the degree-zero ring.

    Attributes:
        cone: The maximal cone σ.
        degree: The class α.
        generator: g_σ in SF coordinates; it vanishes on σ, so it is a unit of
            the localization and every degree-α element is g_σ times a
            degree-zero element.
        unit_exponents: k with ±g_σ + k h_σ in Č.
        stalks: For each prime of the chart, whether the stalk identity holds.
        global_compatible: Every global section of degree α is g_σ times an
            element of σ_M.
    """

    cone: ConeKey
    degree: PicClass
    generator: LatticeVector
    unit_exponents: tuple[int | None, int | None]
    stalks: dict[ConeKey, bool] = field(default_factory=dict)
    global_compatible: bool = True

    @property
    def passed(self) -> bool:
        return None not in self.unit_exponents and all(self.stalks.values()) and self.global_compatible

    def to_dict(self) -> dict:
        return {
            "cone": list(self.cone),
            "degree": list(self.degree.coordinates),
            "generator": list(self.generator),
            "unit_exponents": list(self.unit_exponents),
            "passed": self.passed,
        }


def _character_in_dual(qp: QuotientPresentation, key: ConeKey, x) -> bool:
    m = qp.lattice.preimage(x)
    return m is not None and all(dot(m, qp.fan.ray(i)) >= 0 for i in key)


def _stalk_identity(
    qp: QuotientPresentation, prime: MonomialPrime, g: LatticeVector, sections: list[LatticeVector]
) -> bool:
    """Degree-α part of the localization at the prime equals g times its degree-zero part."""
    tau = prime.cone
    h_tau = qp.h_dist[tau]
    negated = tuple(-a for a in g)
    if qp.exponent_into_check(g, h_tau) is None or qp.exponent_into_check(negated, h_tau) is None:
        return False
    for m in dual_generators(qp, tau):
        x = tuple(a + b for a, b in zip(g, qp.lattice.iota_coordinates(m)))
        if not in_localization(qp, tau, x) or qp.exponent_into_check(x, h_tau) is None:
            return False
    return all(_character_in_dual(qp, tau, tuple(a - b for a, b in zip(x, g))) for x in sections)


def twisted_sections_on_chart(
    qp: QuotientPresentation,
    alpha: PicClass,
    key: ConeKey,
    primes: list[MonomialPrime] | None = None,
    sections: GlobalSections | None = None,
) -> ChartGenerator:
    """
    Trivializes S(α)~ on the chart of σ and certifies the stalks there.

    Raises:
        ToriqError: DEGREE_UNREACHABLE if α has no lift to SF.
    """
    lattice = qp.lattice
    key = tuple(sorted(key))
    c0 = _lift(qp, alpha)
    m = restriction_character(qp, key, c0)
    g = tuple(a - b for a, b in zip(c0, lattice.iota_coordinates(m)))
    if lattice.degree(g) != alpha:
        raise ToriqError(ErrorCode.INTERNAL_INCONSISTENCY, f"Chart generator {list(g)} has the wrong degree.")

    h_sigma = qp.h_dist[key]
    unit_exponents = (
        qp.exponent_into_check(g, h_sigma),
        qp.exponent_into_check(tuple(-a for a in g), h_sigma),
    )
    sections = sections if sections is not None else global_sections(qp, alpha)
    finite = [s.exponent for s in sections.monomials]
    result = ChartGenerator(cone=key, degree=alpha, generator=g, unit_exponents=unit_exponents)

    chart = [p for p in relevant_primes(qp, primes) if not p.contains(qp, h_sigma)]
    for prime in chart:
        result.stalks[prime.ray_ids] = _stalk_identity(qp, prime, g, finite)
    result.global_compatible = all(
        _character_in_dual(qp, key, tuple(a - b for a, b in zip(x, g))) for x in finite
    )
    logger.debug(f"Chart {list(key)} in degree {list(alpha.coordinates)}: generator {list(g)}.")
    return result


def direct_sum_sections_on_chart(
    qp: QuotientPresentation, alphas: Sequence[PicClass], key: ConeKey
) -> list[ChartGenerator]:
    """One generator per summand of S(α1) ⊕ ... ⊕ S(αk)."""
    return [twisted_sections_on_chart(qp, alpha, key) for alpha in alphas]


def chart_overlaps(qp: QuotientPresentation, generators: dict[ConeKey, ChartGenerator]) -> dict[tuple, bool]:
    """
    On every overlap σ ∩ σ' the quotient g_σ / g_σ' is a unit of the
    localization at the common face.
    """
    results = {}
    keys = sorted(generators)
    for a, b in itertools.combinations(keys, 2):
        tau = tuple(sorted(set(a) & set(b)))
        if tau not in qp.fan.cones:
            continue
        quotient = to_vector(x - y for x, y in zip(generators[a].generator, generators[b].generator))
        h_tau = qp.h_dist[tau]
        results[(a, b)] = (
            qp.exponent_into_check(quotient, h_tau) is not None
            and qp.exponent_into_check(tuple(-x for x in quotient), h_tau) is not None
        )
    return results
