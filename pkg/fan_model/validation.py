import itertools
import logging
from dataclasses import dataclass, field

import pandas as pd

from config.errors import ErrorCode
from fan_model.fan import ConeKey, Fan
from polyhedral import Cone

logger = logging.getLogger(__name__)

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Violation:
    """One violated fan axiom."""

    kind: ErrorCode
    cones: tuple[ConeKey, ...]
    message: str
    severity: str = ERROR

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "cones": [list(c) for c in self.cones],
            "message": self.message,
            "severity": self.severity,
        }


@dataclass
class ValidationReport:
    fan_name: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not any(v.severity == ERROR for v in self.violations)

    @property
    def errors(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == ERROR]

    def kinds(self) -> set[ErrorCode]:
        return {v.kind for v in self.violations}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [v.to_dict() for v in self.violations], columns=["kind", "cones", "message", "severity"]
        )

    def to_dict(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_dict() for v in self.violations]}


def _intersection_is_common_face(fan: Fan, a: ConeKey, b: ConeKey) -> bool:
    cone_a, cone_b = fan.maximal_cones[a], fan.maximal_cones[b]
    shared = sorted(set(a) & set(b))
    for key, cone in ((a, cone_a), (b, cone_b)):
        positions = [i for i, r in enumerate(cone.rays) if r in {fan.ray(s) for s in shared}]
        if len(positions) != len(shared) or cone.face_from_rays(positions) is None:
            return False
    intersection = Cone.from_inequalities(
        list(cone_a.facet_normals) + list(cone_b.facet_normals),
        list(cone_a.equations) + list(cone_b.equations),
        ambient_rank=fan.lattice_rank,
    )
    return intersection == Cone([fan.ray(s) for s in shared], ambient_rank=fan.lattice_rank)


def validate_fan(fan: Fan) -> ValidationReport:
    """
    Checks the fan axioms and lists every violation found.

    Span deficiency is reported with warning severity; everything else is an
    error. An empty error list means the fan is valid.
    """
    report = ValidationReport(fan_name=fan.name)
    pointed = []

    # 1. Strong convexity and extremality of the listed rays.
    for key, cone in fan.maximal_cones.items():
        if not cone.is_pointed:
            report.violations.append(
                Violation(ErrorCode.NOT_POINTED, (key,), f"Cone {list(key)} contains a line.")
            )
            continue
        pointed.append(key)
        extremal = set(cone.rays)
        missing = [i for i in key if fan.ray(i) not in extremal]
        if missing:
            report.violations.append(
                Violation(
                    ErrorCode.MISSING_FACE,
                    (key,),
                    f"Rays {missing} of cone {list(key)} are not faces of it.",
                )
            )

    # 2. Pairwise intersections must be common faces.
    for a, b in itertools.combinations(pointed, 2):
        if not _intersection_is_common_face(fan, a, b):
            report.violations.append(
                Violation(
                    ErrorCode.BAD_INTERSECTION,
                    (a, b),
                    f"Cones {list(a)} and {list(b)} do not meet in a common face.",
                )
            )

    # 3. Every listed ray must be a cone of the fan.
    used = {i for key in fan.maximal_keys for i in key}
    for ray_id in fan.ray_ids:
        if ray_id not in used:
            report.violations.append(
                Violation(ErrorCode.UNUSED_RAY, ((ray_id,),), f"Ray {ray_id} lies in no cone.")
            )

    # 4. The rays should span N_R.
    if not fan.spans():
        report.violations.append(
            Violation(
                ErrorCode.SPAN_DEFICIENT,
                (),
                f"Rays of {fan.name} do not span a space of dimension {fan.lattice_rank}.",
                severity=WARNING,
            )
        )

    if report.valid:
        logger.info(f"✅ Fan '{fan.name}' is valid ({len(report.violations)} warnings).")
    else:
        logger.warning(f"❌ Fan '{fan.name}' has {len(report.errors)} axiom violations.")
        for v in report.errors:
            logger.debug(f"  {v.kind.value}: {v.message}")
    return report
