"""
Monomials and monomial primes of S = k[Č ∩ SF], graded by Pic(X).
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from config.settings import PRIMALITY_SAMPLE_SIZE, RANDOM_SEED
from cox_quotient import QuotientPresentation, face_ray_ids, in_face_prime, irrelevant_ideal
from exact_linalg import LatticeVector, to_vector
from fan_model import ConeKey
from support_fn import PicClass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedMonomial:
    """A monomial χ(h) of S with its Pic degree."""

    exponent: LatticeVector
    degree: PicClass

    def to_dict(self) -> dict:
        return {"exponent": list(self.exponent), "degree": list(self.degree.coordinates)}


def monomial(qp: QuotientPresentation, exponent) -> GradedMonomial:
    """Wraps an exponent of Č ∩ SF; the degree is always computed, never passed in."""
    exponent = to_vector(exponent)
    if not qp.in_check(exponent):
        raise ValueError(f"{list(exponent)} is not an exponent of S: some ray value is negative.")
    return GradedMonomial(exponent=exponent, degree=qp.lattice.degree(exponent))


@dataclass(frozen=True)
class MonomialPrime:
    """
    The prime of S generated by the monomials not on the dual face of a face F of C.

    Attributes:
        ray_ids: Rays ρ whose l_ρ span F.
        generators: Ring generators lying in the prime.
        contains_irrelevant: True when F lies in V(B).
        cone: The cone σ of the fan with σ̂ = F, or None.
    """

    ray_ids: ConeKey
    generators: tuple[LatticeVector, ...] = field(compare=False)
    contains_irrelevant: bool = field(compare=False)
    cone: ConeKey | None = field(compare=False)

    def contains(self, qp: QuotientPresentation, x) -> bool:
        return in_face_prime(qp, self.ray_ids, x)

    def __le__(self, other: "MonomialPrime") -> bool:
        return set(self.ray_ids) <= set(other.ray_ids)


def ring_generators(qp: QuotientPresentation) -> list[GradedMonomial]:
    """Hilbert basis of Č ∩ SF with degrees: the minimal monomial generators of S."""
    generators = [monomial(qp, h) for h in qp.cone_check.hilbert_basis()]
    logger.info(f"S has {len(generators)} monomial generators.")
    return generators


def monomial_primes(qp: QuotientPresentation) -> list[MonomialPrime]:
    """One prime per face of C, flagged when it contains B, matched to Δ otherwise."""
    generators = [g.exponent for g in ring_generators(qp)]
    radical = irrelevant_ideal(qp).radical
    by_face = {face.generator_indices: key for key, face in qp.hat_cones.items()}

    primes = []
    for face in qp.cone_c.face_lattice():
        ids = face_ray_ids(qp, face.generator_indices)
        contains_b = all(in_face_prime(qp, ids, g) for g in radical.generators)
        primes.append(
            MonomialPrime(
                ray_ids=ids,
                generators=tuple(g for g in generators if in_face_prime(qp, ids, g)),
                contains_irrelevant=contains_b,
                cone=None if contains_b else by_face.get(face.generator_indices),
            )
        )
    logger.info(
        f"{len(primes)} monomial primes, {sum(p.contains_irrelevant for p in primes)} containing B."
    )
    return primes


def relevant_primes(qp: QuotientPresentation, primes: list[MonomialPrime] | None = None) -> list[MonomialPrime]:
    primes = primes if primes is not None else monomial_primes(qp)
    return [p for p in primes if not p.contains_irrelevant]


def d_plus(qp: QuotientPresentation, primes: list[MonomialPrime], x) -> set[ConeKey]:
    """D₊(χ(x)): the relevant primes not containing χ(x), by their ray ids."""
    return {p.ray_ids for p in primes if not p.contains_irrelevant and not p.contains(qp, x)}


def check_intersection_law(qp: QuotientPresentation, primes: list[MonomialPrime] | None = None) -> bool:
    """D₊(fg) = D₊(f) ∩ D₊(g) for every pair of ring generators."""
    primes = primes if primes is not None else monomial_primes(qp)
    generators = [g.exponent for g in ring_generators(qp)]
    for f, g in itertools.combinations_with_replacement(generators, 2):
        product = tuple(a + b for a, b in zip(f, g))
        if d_plus(qp, primes, product) != d_plus(qp, primes, f) & d_plus(qp, primes, g):
            logger.warning(f"❌ D₊ intersection law fails for {f}, {g}.")
            return False
    return True


def check_primality(
    qp: QuotientPresentation,
    primes: list[MonomialPrime] | None = None,
    sample_size: int = PRIMALITY_SAMPLE_SIZE,
    seed: int = RANDOM_SEED,
) -> bool:
    """
    For random monomial pairs, membership of the product in each prime is
    membership of one of the factors.
    """
    primes = primes if primes is not None else monomial_primes(qp)
    generators = [g.exponent for g in ring_generators(qp)]
    if not generators:
        return True
    rng = np.random.default_rng(seed)
    basis = np.array(generators, dtype=object)
    for _ in range(sample_size):
        a = rng.integers(0, 3, size=len(generators)).astype(object)
        b = rng.integers(0, 3, size=len(generators)).astype(object)
        f, g = to_vector(a.dot(basis)), to_vector(b.dot(basis))
        product = tuple(x + y for x, y in zip(f, g))
        for p in primes:
            if p.contains(qp, product) != (p.contains(qp, f) or p.contains(qp, g)):
                logger.warning(f"❌ Prime {p.ray_ids} is not prime on {f}, {g}.")
                return False
    return True
