"""
The cone Č of effective support functions, its dual C and the distinguished
elements h_σ.

Coordinates on SF are those of the SupportLattice basis. A ray ρ gives the
evaluation functional h -> h(n_ρ), which is row ρ of the lattice's ray
matrix; Č is cut out by these rows and C is generated by them.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

import pandas as pd

from config.errors import ErrorCode, ToriqError
from config.settings import get_escalated_bound, get_search_bound
from exact_linalg import LatticeVector, primitive, to_vector
from fan_model import ConeKey, Fan
from polyhedral import Cone, Face
from support_fn import SupportLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnoughCartierRow:
    """Outcome of the enough-Cartier test for one cone of the fan."""

    cone: ConeKey
    passed: bool
    witness: LatticeVector | None
    witness_ray_values: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {
            "cone": list(self.cone),
            "passed": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
            "witness_ray_values": list(self.witness_ray_values) if self.witness_ray_values is not None else None,
        }


@dataclass
class EnoughCartierReport:
    rows: list[EnoughCartierRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failing_cones(self) -> list[ConeKey]:
        return [row.cone for row in self.rows if not row.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "cone": str(list(row.cone)),
                    "passed": row.passed,
                    "witness_ray_values": str(list(row.witness_ray_values)) if row.witness_ray_values else "",
                }
                for row in self.rows
            ],
            columns=["cone", "passed", "witness_ray_values"],
        )


@dataclass
class QuotientPresentation:
    """
    The combinatorial pair (C, Δ̂) together with Č and the elements h_σ.

    Attributes:
        lattice: The support lattice the presentation is built on.
        cone_check: Č, the cone of support functions nonnegative on every ray.
        cone_c: C, the dual of Č; its extremal rays are the l_ρ.
        l: Primitive ray generator l_ρ of C for every ray id.
        hat_cones: The face σ̂ of C for every cone σ of the fan.
        dual_faces: The face of Č dual to σ̂ for every cone σ.
        h_dist: The distinguished element h_σ, in SF coordinates, for every cone.
        certificates: Named boolean checks recorded while building.
    """

    lattice: SupportLattice
    cone_check: Cone
    cone_c: Cone
    l: dict[int, LatticeVector]
    hat_cones: dict[ConeKey, Face]
    dual_faces: dict[ConeKey, Cone]
    h_dist: dict[ConeKey, LatticeVector]
    certificates: dict[str, bool] = field(default_factory=dict)

    @property
    def fan(self) -> Fan:
        return self.lattice.fan

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def in_check(self, x: Sequence[int]) -> bool:
        """Membership in Č ∩ SF: every ray value is nonnegative."""
        return all(v >= 0 for v in self.lattice.values_of(x))

    def exponent_into_check(
        self, base: Sequence[int], step: Sequence[int], bound: int | None = None
    ) -> int | None:
        """
        Smallest k >= 0 with base + k * step in Č, searched up to the
        configured bound and once more up to the escalated bound.
        """
        bound = bound if bound is not None else get_search_bound()
        for k in range(bound + 1):
            if self.in_check(tuple(a + k * b for a, b in zip(base, step))):
                return k
        escalated = get_escalated_bound(bound)
        logger.debug(f"No exponent up to {bound} for {tuple(base)}; retrying up to {escalated}.")
        for k in range(bound + 1, escalated + 1):
            if self.in_check(tuple(a + k * b for a, b in zip(base, step))):
                return k
        return None

    def __repr__(self) -> str:
        return f"QuotientPresentation(fan={self.fan.name!r}, rank={self.rank}, rays={len(self.l)})"


def half_space(lattice: SupportLattice, ray_id: int) -> LatticeVector:
    """The functional h -> h(n_ρ) in coordinates dual to the SF basis."""
    position = lattice.fan.position(ray_id)
    functional = to_vector(lattice.ray_matrix[position])
    if all(a == 0 for a in functional):
        raise ToriqError(ErrorCode.INTERNAL_INCONSISTENCY, f"Evaluation at ray {ray_id} vanishes on SF.")
    return functional


def _dual_face(lattice: SupportLattice, key: ConeKey) -> Cone:
    """{h in Č : h(n_ρ) = 0 for ρ in the cone}."""
    fan = lattice.fan
    normals = [half_space(lattice, i) for i in fan.ray_ids]
    equations = [half_space(lattice, i) for i in key]
    return Cone.from_inequalities(normals, equations, ambient_rank=lattice.rank)


def _positive_off(lattice: SupportLattice, key: ConeKey, x: Sequence[int]) -> bool:
    values = lattice.values_of(x)
    inside = set(key)
    return all(
        (v == 0) if ray_id in inside else (v > 0) for ray_id, v in zip(lattice.fan.ray_ids, values)
    )


def check_enough_cartier(lattice: SupportLattice) -> EnoughCartierReport:
    """
    Decides, for every cone σ, whether some integral h vanishes on the rays
    of σ and is positive on every other ray.

    The set of h vanishing on σ inside Č is a face F_σ of Č. A suitable h
    exists iff the relative interior of F_σ is positive off σ, which is
    decided exactly by the sum of the extremal rays of F_σ.
    """
    rows = []
    for key in lattice.fan.cones:
        face = _dual_face(lattice, key)
        # Stands in for the LP {h in F_σ : h(n_ρ) >= 1 off σ}. Every h in F_σ
        # is a nonnegative combination of its extremal rays, so some h is
        # positive at n_ρ iff some ray is, iff their sum is. A positive rational
        # solution scales to an integral one, so the sum is feasible iff the LP is.
        witness = tuple(sum(col) for col in zip(*face.rays)) if face.rays else (0,) * lattice.rank
        passed = face.is_pointed and _positive_off(lattice, key, witness)
        values = lattice.values_of(witness)
        rows.append(
            EnoughCartierRow(
                cone=key,
                passed=passed,
                witness=witness if passed else None,
                witness_ray_values=values if passed else None,
            )
        )
        logger.debug(f"Enough-Cartier {key}: {'passed' if passed else 'failed'}.")

    report = EnoughCartierReport(rows)
    if report.passed:
        logger.info(f"✅ {lattice.fan.name} has enough invariant Cartier divisors ({len(rows)} cones).")
    else:
        logger.warning(f"❌ Enough-Cartier test failed on {len(report.failing_cones)} cones of {lattice.fan.name}.")
    return report


def _certify(certificates: dict[str, bool], name: str, passed: bool, message: str):
    certificates[name] = passed
    if not passed:
        raise ToriqError(ErrorCode.INTERNAL_INCONSISTENCY, message, {"certificate": name})


def build_quotient(lattice: SupportLattice) -> QuotientPresentation:
    """
    Builds Č, C, the ray generators l_ρ, the faces σ̂ and the elements h_σ.

    Raises:
        ToriqError: NOT_ENOUGH_CARTIER listing the failing cones, or
            INTERNAL_INCONSISTENCY when a structural certificate fails.
    """
    fan = lattice.fan
    lattice.quotient_group_data()

    # 1. Enough invariant Cartier divisors
    report = check_enough_cartier(lattice)
    if not report.passed:
        failing = [list(k) for k in report.failing_cones]
        raise ToriqError(
            ErrorCode.NOT_ENOUGH_CARTIER,
            f"{fan.name} lacks enough invariant Cartier divisors on {len(failing)} cones.",
            {"failing_cones": failing},
        )

    # 2. Č and C
    certificates: dict[str, bool] = {}
    functionals = {ray_id: half_space(lattice, ray_id) for ray_id in fan.ray_ids}
    cone_check = Cone.from_inequalities(list(functionals.values()), ambient_rank=lattice.rank)
    _certify(certificates, "check_pointed", cone_check.is_pointed, "Č has a lineality space.")
    _certify(certificates, "check_full_dimensional", cone_check.is_full_dimensional, "Č is not full-dimensional.")

    l = {ray_id: primitive(f) for ray_id, f in functionals.items()}
    cone_c = Cone(list(l.values()), ambient_rank=lattice.rank)
    _certify(
        certificates,
        "ray_bijection",
        len(set(l.values())) == len(l) and list(cone_c.rays) == [l[i] for i in fan.ray_ids],
        "The l_ρ are not the distinct extremal rays of C.",
    )

    # 3. Faces σ̂ and their duals
    hat_cones: dict[ConeKey, Face] = {}
    dual_faces: dict[ConeKey, Cone] = {}
    h_dist: dict[ConeKey, LatticeVector] = {}
    for key in fan.cones:
        face = cone_c.face_from_rays(fan.position(i) for i in key)
        _certify(certificates, f"face{list(key)}", face is not None, f"The l_ρ of {key} do not span a face of C.")
        hat_cones[key] = face

        dual = _dual_face(lattice, key)
        dual_faces[key] = dual
        h = tuple(sum(col) for col in zip(*dual.hilbert_basis())) if dual.dim else (0,) * lattice.rank
        _certify(
            certificates,
            f"h_dist{list(key)}",
            _positive_off(lattice, key, h),
            f"h_σ for {key} is not positive off the cone.",
        )
        h_dist[key] = h

    qp = QuotientPresentation(
        lattice=lattice,
        cone_check=cone_check,
        cone_c=cone_c,
        l=l,
        hat_cones=hat_cones,
        dual_faces=dual_faces,
        h_dist=h_dist,
        certificates=certificates,
    )
    logger.info(f"🚀 Quotient presentation of {fan.name}: C has {len(cone_c.rays)} rays in rank {lattice.rank}.")
    return qp
