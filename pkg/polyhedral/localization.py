import itertools
import logging
from dataclasses import dataclass, field

from exact_linalg import LatticeVector, dot
from polyhedral.cone import Cone, Face
from polyhedral.semigroup import semigroup_generators

logger = logging.getLogger(__name__)


@dataclass
class FaceLocalization:
    """
    The semigroup of a cone's dual localized at a face.

    Attributes:
        face_indices: Ray indices of the face tau of sigma.
        character: m in the relative interior of dual(sigma) ∩ tau^perp.
        generators: Generators of dual(sigma)_M + Z>=0 (-m).
        exponents: For each checked lattice point x of dual(tau), the k with
            x + k m in dual(sigma); None when the search failed.
    """

    face_indices: tuple[int, ...]
    character: LatticeVector
    generators: list[LatticeVector]
    exponents: dict[LatticeVector, int | None] = field(default_factory=dict)
    generators_in_face_dual: bool = True
    character_positive_off_face: bool = True

    @property
    def passed(self) -> bool:
        return (
            self.generators_in_face_dual
            and self.character_positive_off_face
            and all(k is not None for k in self.exponents.values())
        )


def localize_at_face(sigma: Cone, tau: Face, bound: int, radius: int = 2) -> FaceLocalization:
    """
    Certifies dual(tau) ∩ M = dual(sigma) ∩ M + Z>=0 (-m) on the box [-radius, radius]^d.

    Args:
        sigma: A pointed cone in N.
        tau: A face of sigma.
        bound: Largest exponent k tried for each box point.
        radius: Half-width of the checked box.
    """
    d = sigma.ambient_rank
    m = tuple(sum(col) for col in zip(*tau.defining_normals)) if tau.defining_normals else (0,) * d
    sigma_dual = sigma.dual_cone()
    tau_dual = tau.cone().dual_cone()

    generators = semigroup_generators(sigma_dual) + [tuple(-x for x in m)]
    result = FaceLocalization(face_indices=tau.generator_indices, character=m, generators=generators)
    result.generators_in_face_dual = all(tau_dual.contains(g) for g in generators)
    result.character_positive_off_face = positive_off_face(sigma, tau, m)

    for x in itertools.product(range(-radius, radius + 1), repeat=d):
        if not tau_dual.contains(x):
            continue
        result.exponents[x] = next(
            (k for k in range(bound + 1) if sigma_dual.contains(tuple(a + k * b for a, b in zip(x, m)))),
            None,
        )

    failures = [x for x, k in result.exponents.items() if k is None]
    if failures:
        logger.warning(f"Face localization at {tau.generator_indices} failed for {len(failures)} points.")
    return result


def positive_off_face(sigma: Cone, tau: Face, m: LatticeVector) -> bool:
    """True when m vanishes on tau and is positive on every other ray of sigma."""
    inside = set(tau.generator_indices)
    return all(
        (dot(m, r) == 0) if i in inside else (dot(m, r) > 0) for i, r in enumerate(sigma.rays)
    )
