"""
The irrelevant ideal B = Σ B_σ over maximal cones, its vanishing locus on
U_C and the inclusions between the charts D₊(χ(h_σ)).

A face F of C is the torus orbit of U_C whose monomial prime consists of the
exponents x with x(n_ρ) > 0 for some ρ in F. The locus V(B) is the set of
faces whose prime contains every generator of B.
"""

import logging
import math
from dataclasses import dataclass, field

from config.errors import ErrorCode, ToriqError
from exact_linalg import LatticeVector
from fan_model import ConeKey
from polyhedral import interior_ideal_generators
from cox_quotient.presentation import QuotientPresentation

logger = logging.getLogger(__name__)


def _sub(x, y) -> LatticeVector:
    return tuple(a - b for a, b in zip(x, y))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of k[Č ∩ SF] given by exponent generators."""

    generators: tuple[LatticeVector, ...]
    presentation: QuotientPresentation = field(compare=False, repr=False)

    def contains(self, x) -> bool:
        """x lies in the ideal iff x - g is in Č for some generator g."""
        return any(self.presentation.in_check(_sub(x, g)) for g in self.generators)

    @property
    def is_unit(self) -> bool:
        return any(all(a == 0 for a in g) for g in self.generators)


@dataclass(frozen=True)
class VanishingFace:
    """A face F of C inside V(B) together with its dual face in Č."""

    ray_ids: ConeKey
    dim: int
    dual_face_dim: int

    @property
    def codim(self) -> int:
        return self.dim

    def to_dict(self) -> dict:
        return {"ray_ids": list(self.ray_ids), "dim": self.dim, "dual_face_dim": self.dual_face_dim}


@dataclass
class IrrelevantIdeal:
    """
    B up to radical (generated by the χ(h_σ)) and optionally its full minimal
    generating set, with the faces of V(B).
    """

    radical: MonomialIdeal
    vanishing_faces: list[VanishingFace]
    full: MonomialIdeal | None = None
    radical_certificates: dict[tuple[ConeKey, LatticeVector], tuple[int | None, int | None]] = field(
        default_factory=dict
    )

    @property
    def certificates_passed(self) -> bool:
        return all(a is not None and b is not None for a, b in self.radical_certificates.values())


@dataclass(frozen=True)
class ChartInclusion:
    """D₊(χ(h_τ)) ⊆ D₊(χ(h_σ)) for a face τ of σ, certified by k h_τ - h_σ ∈ Č."""

    tau: ConeKey
    sigma: ConeKey
    exponent: int | None

    @property
    def passed(self) -> bool:
        return self.exponent is not None


def face_ray_ids(qp: QuotientPresentation, generator_indices) -> ConeKey:
    return tuple(sorted(qp.fan.ray_ids[i] for i in generator_indices))


def in_face_prime(qp: QuotientPresentation, face_ids: ConeKey, x) -> bool:
    """Whether the monomial χ(x) lies in the prime of the face of C spanned by the given l_ρ."""
    values = dict(zip(qp.fan.ray_ids, qp.lattice.values_of(x)))
    return any(values[i] > 0 for i in face_ids)


def _minimal(qp: QuotientPresentation, generators: list[LatticeVector]) -> list[LatticeVector]:
    unique = sorted(set(generators))
    return [g for g in unique if not any(h != g and qp.in_check(_sub(g, h)) for h in unique)]


def irrelevant_ideal(qp: QuotientPresentation, full: bool = False) -> IrrelevantIdeal:
    """
    B = Σ B_σ over maximal σ, each B_σ represented up to radical by χ(h_σ).

    Args:
        qp: The quotient presentation.
        full: Also compute the minimal generators of every B_σ (lattice points
            of the relative interior of the dual face of σ̂) and certify that
            each generates the same radical as χ(h_σ).
    """
    fan = qp.fan
    radical = MonomialIdeal(tuple(_minimal(qp, [qp.h_dist[key] for key in fan.maximal_keys])), qp)

    vanishing = []
    for face in qp.cone_c.face_lattice():
        ids = face_ray_ids(qp, face.generator_indices)
        if all(in_face_prime(qp, ids, g) for g in radical.generators):
            vanishing.append(VanishingFace(ray_ids=ids, dim=face.dim, dual_face_dim=qp.rank - face.dim))

    ideal = IrrelevantIdeal(radical=radical, vanishing_faces=vanishing)
    if full:
        generators = []
        for key in fan.maximal_keys:
            h = qp.h_dist[key]
            for g in interior_ideal_generators(qp.dual_faces[key]):
                generators.append(g)
                ideal.radical_certificates[(key, g)] = (
                    qp.exponent_into_check(tuple(-a for a in g), h),
                    qp.exponent_into_check(tuple(-a for a in h), g),
                )
        ideal.full = MonomialIdeal(tuple(_minimal(qp, generators)), qp)
        if not ideal.certificates_passed:
            failing = [[list(k), list(g)] for (k, g), pair in ideal.radical_certificates.items() if None in pair]
            raise ToriqError(
                ErrorCode.CERTIFICATE_FAILURE,
                f"Radical equivalence of B_σ failed for {len(failing)} generators.",
                {"failing": failing},
            )

    logger.info(
        f"Irrelevant ideal of {fan.name}: {len(radical.generators)} radical generators, "
        f"{len(vanishing)} faces in V(B)."
    )
    return ideal


def vanishing_components(ideal: IrrelevantIdeal) -> list[VanishingFace]:
    """Faces of V(B) minimal under inclusion; their orbit closures are the components."""
    faces = ideal.vanishing_faces
    return [
        f for f in faces if not any(g != f and set(g.ray_ids) < set(f.ray_ids) for g in faces)
    ]


def codim_check(qp: QuotientPresentation, ideal: IrrelevantIdeal | None = None) -> int | float:
    """
    Codimension of V(B) in U_C, or math.inf when V(B) is empty.

    Raises:
        ToriqError: INTERNAL_INCONSISTENCY when Pic is nontrivial and the
            codimension is below two.
    """
    ideal = ideal if ideal is not None else irrelevant_ideal(qp)
    if not ideal.vanishing_faces:
        return math.inf
    codim = min(f.codim for f in ideal.vanishing_faces)
    if qp.lattice.pic_rank >= 1 and codim < 2:
        raise ToriqError(ErrorCode.INTERNAL_INCONSISTENCY, f"V(B) has codimension {codim} < 2.")
    return codim


def chart_inclusions(qp: QuotientPresentation) -> list[ChartInclusion]:
    """Certifies D₊(χ(h_τ)) ⊆ D₊(χ(h_σ)) for every pair of cones τ ⊊ σ."""
    keys = list(qp.fan.cones)
    inclusions = []
    for sigma in keys:
        for tau in keys:
            if tau == sigma or not set(tau) <= set(sigma):
                continue
            h_sigma = qp.h_dist[sigma]
            k = qp.exponent_into_check(tuple(-a for a in h_sigma), qp.h_dist[tau])
            inclusions.append(ChartInclusion(tau=tau, sigma=sigma, exponent=k))
    failed = [c for c in inclusions if not c.passed]
    if failed:
        logger.warning(f"❌ {len(failed)} chart inclusions could not be certified.")
    return inclusions
