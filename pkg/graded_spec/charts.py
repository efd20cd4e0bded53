"""
The charts D₊(χ(h_σ)) of the homogeneous spectrum and their degree-zero rings.

Everything is checked at the semigroup level: the localization S_{χ(h_σ)}
has exponents Č ∩ SF + Z h_σ, which is the set of h with h(n_ρ) >= 0 for
the rays ρ of σ.
"""

import logging
from dataclasses import dataclass, field

from config.errors import ErrorCode, ToriqError
from config.settings import get_search_bound
from cox_quotient import QuotientPresentation
from exact_linalg import LatticeVector, dot, lattice_matrix, solve_integer, to_vector
from fan_model import ConeKey
from graded_spec.ring import MonomialPrime, relevant_primes
from polyhedral import Cone, FaceLocalization, localize_at_face, semigroup_generators

logger = logging.getLogger(__name__)


def _neg(x) -> LatticeVector:
    return tuple(-a for a in x)


def _add(x, y, k: int = 1) -> LatticeVector:
    return tuple(a + k * b for a, b in zip(x, y))


def in_localization(qp: QuotientPresentation, key: ConeKey, x) -> bool:
    """Whether x is an exponent of S_{χ(h_σ)}."""
    values = dict(zip(qp.fan.ray_ids, qp.lattice.values_of(x)))
    return all(values[i] >= 0 for i in key)


def dual_generators(qp: QuotientPresentation, key: ConeKey) -> list[LatticeVector]:
    """Generators of the semigroup σ_M = σ̌ ∩ M."""
    return semigroup_generators(qp.fan.cone(key).dual_cone())


@dataclass
class NagspecCertificate:
    """
    Two-sided certificate that the degree-zero part of S_{χ(h_σ)} is ι(σ_M).

    Attributes:
        cone: The cone σ.
        forward: For each generator m of σ_M, the k with ι(m) + k h_σ in Č.
        backward: For each generator x of the degree-zero exponents
            {x : deg x = 0, x(n_ρ) >= 0 for ρ in σ}, the m in σ_M with
            ι(m) = x, or None when x is not such a character or no power of
            h_σ clears its denominator.
        trivial: True when M = 0, where both sides are the zero semigroup.
    """

    cone: ConeKey
    forward: dict[LatticeVector, int | None] = field(default_factory=dict)
    backward: dict[LatticeVector, LatticeVector | None] = field(default_factory=dict)
    trivial: bool = False

    @property
    def passed(self) -> bool:
        if not self.trivial and not self.backward:
            return False
        return all(k is not None for k in self.forward.values()) and all(
            m is not None for m in self.backward.values()
        )


def degree_zero_generators(qp: QuotientPresentation, key: ConeKey) -> list[LatticeVector]:
    """Generators of the exponents of S_{(χ(h_σ))}, computed in SF coordinates."""
    lattice = qp.lattice
    normals = [to_vector(lattice.ray_matrix[qp.fan.position(i)]) for i in key]
    equations = [to_vector(row) for row in lattice.pic.projection] if lattice.pic_rank else []
    zero_part = Cone.from_inequalities(normals, equations, ambient_rank=qp.rank)
    return semigroup_generators(zero_part)


def verify_nagspec(qp: QuotientPresentation, key: ConeKey, bound: int | None = None) -> NagspecCertificate:
    """
    Certifies S_{(χ(h_σ))} ≅ k[σ_M] on generators in both directions.

    Raises:
        ToriqError: CERTIFICATE_FAILURE if either inclusion cannot be certified.
    """
    bound = bound if bound is not None else get_search_bound()
    lattice = qp.lattice
    key = tuple(sorted(key))
    h_sigma = qp.h_dist[key]
    certificate = NagspecCertificate(cone=key, trivial=lattice.lattice_rank == 0)

    # 1. ι(σ_M) lies in the degree-zero localization
    for m in dual_generators(qp, key):
        certificate.forward[m] = qp.exponent_into_check(lattice.iota_coordinates(m), h_sigma, bound)

    # 2. Every degree-zero generator is a fraction over a power of h_σ and comes from σ_M
    sigma_rays = [qp.fan.ray(i) for i in key]
    for x in degree_zero_generators(qp, key):
        m = lattice.preimage(x)
        if m is not None and any(dot(m, n) < 0 for n in sigma_rays):
            m = None
        if m is not None and qp.exponent_into_check(x, h_sigma, bound) is None:
            m = None
        certificate.backward[x] = m

    if not certificate.passed:
        raise ToriqError(
            ErrorCode.CERTIFICATE_FAILURE,
            f"Degree-zero localization at {list(key)} does not match σ_M.",
            {
                "cone": list(key),
                "forward_failures": [list(m) for m, k in certificate.forward.items() if k is None],
                "backward_failures": [list(x) for x, m in certificate.backward.items() if m is None],
                "backward_checked": len(certificate.backward),
            },
        )
    logger.debug(f"Localization certificate at {list(key)}: {len(certificate.forward)} + {len(certificate.backward)}.")
    return certificate


@dataclass(frozen=True)
class HomunitFactorization:
    """h = ι(m) + h' with h' vanishing on σ and a unit of S_{χ(h_σ)}."""

    cone: ConeKey
    exponent: LatticeVector
    character: LatticeVector
    unit: LatticeVector
    unit_exponents: tuple[int, int]


def restriction_character(qp: QuotientPresentation, key: ConeKey, exponent) -> LatticeVector:
    """
    Some m in M agreeing with the support function on σ.

    Raises:
        ToriqError: NON_INTEGRAL_RESTRICTION when no integral m exists.
    """
    lattice = qp.lattice
    cone = qp.fan.cone(key)
    points = cone.hilbert_basis()
    if not points:
        return (0,) * lattice.lattice_rank
    h = lattice.element(exponent)
    values = [lattice.evaluate(h, p) for p in points]
    m = None
    if all(isinstance(v, int) for v in values):
        m = solve_integer(lattice_matrix(points, lattice.lattice_rank), values)
    if m is None:
        raise ToriqError(
            ErrorCode.NON_INTEGRAL_RESTRICTION,
            f"The restriction of {list(exponent)} to {list(key)} is not induced by a character.",
        )
    return m


def homunit_factorize(qp: QuotientPresentation, key: ConeKey, exponent) -> HomunitFactorization:
    """
    Splits a monomial of S_{χ(h_σ)} as a degree-zero character times a unit.

    Args:
        qp: The quotient presentation.
        key: The cone σ.
        exponent: SF coordinates of h; h(n_ρ) >= 0 is required for the rays of σ.

    Raises:
        ValueError: If h is not in the localization.
        ToriqError: NON_INTEGRAL_RESTRICTION, or CERTIFICATE_FAILURE when the
            unit exponents are not found.
    """
    key = tuple(sorted(key))
    exponent = to_vector(exponent)
    if not in_localization(qp, key, exponent):
        raise ValueError(f"{list(exponent)} is not an exponent of the localization at {list(key)}.")

    m = restriction_character(qp, key, exponent)
    unit = _add(exponent, qp.lattice.iota_coordinates(m), -1)
    values = dict(zip(qp.fan.ray_ids, qp.lattice.values_of(unit)))
    if any(values[i] != 0 for i in key):
        raise ToriqError(ErrorCode.INTERNAL_INCONSISTENCY, f"h - ι(m) does not vanish on {list(key)}.")

    h_sigma = qp.h_dist[key]
    k_plus = qp.exponent_into_check(unit, h_sigma)
    k_minus = qp.exponent_into_check(_neg(unit), h_sigma)
    if k_plus is None or k_minus is None:
        raise ToriqError(ErrorCode.CERTIFICATE_FAILURE, f"No unit certificate for {list(unit)} at {list(key)}.")
    return HomunitFactorization(
        cone=key, exponent=exponent, character=m, unit=unit, unit_exponents=(k_plus, k_minus)
    )


@dataclass
class ChartContraction:
    """
    Contraction of the monomial primes of one chart to monomial primes of σ_M.

    Attributes:
        cone: The maximal cone σ.
        mapping: Ray ids of a prime in D₊(χ(h_σ)) -> the face τ of σ it contracts to.
        bijective: The mapping hits every face of σ exactly once.
        order_preserving: Inclusions of primes match inclusions of the contractions.
    """

    cone: ConeKey
    mapping: dict[ConeKey, ConeKey | None]
    bijective: bool
    order_preserving: bool

    @property
    def passed(self) -> bool:
        return self.bijective and self.order_preserving


def chart_contraction(
    qp: QuotientPresentation, key: ConeKey, primes: list[MonomialPrime] | None = None
) -> ChartContraction:
    """Maps 𝔭 to (𝔭 S_{χ(h_σ)}) ∩ S_{(χ(h_σ))} for every prime of the chart."""
    lattice = qp.lattice
    key = tuple(sorted(key))
    h_sigma = qp.h_dist[key]
    chart = [p for p in relevant_primes(qp, primes) if not p.contains(qp, h_sigma)]

    lifted = {}
    for m in dual_generators(qp, key):
        k = qp.exponent_into_check(lattice.iota_coordinates(m), h_sigma)
        if k is None:
            raise ToriqError(ErrorCode.CERTIFICATE_FAILURE, f"Character {list(m)} does not lift into the chart.")
        lifted[m] = _add(lattice.iota_coordinates(m), h_sigma, k)

    contracted = {p.ray_ids: frozenset(m for m, x in lifted.items() if p.contains(qp, x)) for p in chart}
    faces = [tau for tau in qp.fan.cones if set(tau) <= set(key)]
    targets = {
        tau: frozenset(m for m in lifted if any(dot(m, qp.fan.ray(i)) > 0 for i in tau)) for tau in faces
    }
    by_set = {}
    for tau, s in targets.items():
        by_set.setdefault(s, []).append(tau)

    mapping = {
        ids: (by_set[s][0] if len(by_set.get(s, [])) == 1 else None) for ids, s in contracted.items()
    }
    images = [tau for tau in mapping.values() if tau is not None]
    bijective = (
        None not in mapping.values() and len(set(images)) == len(images) and set(images) == set(faces)
    )
    order_preserving = all(
        (set(a) <= set(b)) == (contracted[a] <= contracted[b]) for a in contracted for b in contracted
    )
    return ChartContraction(cone=key, mapping=mapping, bijective=bijective, order_preserving=order_preserving)


def charts_cover(qp: QuotientPresentation, primes: list[MonomialPrime] | None = None) -> bool:
    """Every prime avoiding B lies in D₊(χ(h_σ)) for some maximal σ."""
    charts = [qp.h_dist[key] for key in qp.fan.maximal_keys]
    uncovered = [p.ray_ids for p in relevant_primes(qp, primes) if all(p.contains(qp, h) for h in charts)]
    if uncovered:
        logger.warning(f"❌ Primes {uncovered} lie in no chart.")
    return not uncovered


@dataclass
class FaceLocalizationCheck:
    tau: ConeKey
    sigma: ConeKey
    localization: FaceLocalization
    nagspec_passed: bool

    @property
    def passed(self) -> bool:
        return self.localization.passed and self.nagspec_passed


def verify_face_localization(
    qp: QuotientPresentation, tau: ConeKey, sigma: ConeKey, bound: int | None = None
) -> FaceLocalizationCheck:
    """
    σ_M localized at the face τ is τ_M, and τ_M is the degree-zero part of
    S_{χ(h_τ)}.
    """
    bound = bound if bound is not None else get_search_bound()
    tau, sigma = tuple(sorted(tau)), tuple(sorted(sigma))
    if not set(tau) <= set(sigma):
        raise ValueError(f"{list(tau)} is not a face of {list(sigma)}.")
    cone = qp.fan.cone(sigma)
    face = cone.face_from_rays(cone.rays.index(qp.fan.ray(i)) for i in tau)
    if face is None:
        raise ToriqError(ErrorCode.INTERNAL_INCONSISTENCY, f"{list(tau)} does not span a face of {list(sigma)}.")
    localization = localize_at_face(cone, face, bound)
    try:
        nagspec_passed = verify_nagspec(qp, tau, bound).passed
    except ToriqError as e:
        logger.warning(f"❌ {e}")
        nagspec_passed = False
    return FaceLocalizationCheck(tau=tau, sigma=sigma, localization=localization, nagspec_passed=nagspec_passed)

