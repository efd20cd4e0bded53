"""
Machine-readable reports.

Reports are JSON with sorted keys and a fixed indent, so identical input
gives identical bytes. Integers beyond 64 bits are written as decimal
strings and turned back into ints on load.
"""

import json
import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from config.settings import INT64_MAX, REPORT_INDENT, RESULTS_DIR, TOOL_VERSION
from cox_quotient import IrrelevantIdeal, QuotientPresentation

logger = logging.getLogger(__name__)

_DECIMAL = re.compile(r"^-?\d+$")


def encode_big_ints(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > INT64_MAX else value
    if isinstance(value, dict):
        return {k: encode_big_ints(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_big_ints(v) for v in value]
    return value


def decode_big_ints(value: Any) -> Any:
    if isinstance(value, str) and _DECIMAL.match(value) and abs(int(value)) > INT64_MAX:
        return int(value)
    if isinstance(value, dict):
        return {k: decode_big_ints(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_big_ints(v) for v in value]
    return value


@dataclass
class Report:
    """Outcome of one CLI command: per-stage sections plus a status."""

    command: str
    fan_name: str
    sections: dict[str, Any] = field(default_factory=dict)
    status: str = "ok"
    error: dict[str, Any] | None = None
    exit_code: int = 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "fan": self.fan_name,
            "sections": self.sections,
            "status": self.status,
            "error": self.error,
            "exit_code": self.exit_code,
            "tool_version": TOOL_VERSION,
        }

    def to_json(self) -> str:
        return json.dumps(encode_big_ints(self.to_dict()), sort_keys=True, indent=REPORT_INDENT, ensure_ascii=False)


class ReportWriter:
    """
    Handles all file I/O for reports, in a configured results directory or
    at an explicit path.
    """

    def __init__(self, results_dir: str | Path = RESULTS_DIR):
        self.results_dir = Path(results_dir)

    def default_path(self, report: Report) -> Path:
        return self.results_dir / f"{report.fan_name}_{report.command}.json"

    def save(self, report: Report, path: str | Path | None = None) -> Path | None:
        """
        Writes the report as UTF-8 JSON.

        Returns:
            The written path, or None if writing failed.
        """
        path = Path(path) if path is not None else self.default_path(report)
        logger.info(f"Saving {report.command} report to {path}...")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(report.to_json() + "\n", encoding="utf-8")
            logger.info("✅ Report saved successfully.")
            return path
        except OSError as e:
            logger.error(f"❌ Failed to save report to {path}: {e}")
            return None

    def load(self, path: str | Path) -> dict | None:
        path = Path(path)
        logger.info(f"Loading report from {path}...")
        try:
            return decode_big_ints(json.loads(path.read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"❌ Failed to load report from {path}: {e}")
            return None


@dataclass(frozen=True)
class QuotientRecord:
    """The serializable content of a quotient presentation."""

    fan_name: str
    sf_rank: int
    pic_rank: int
    l: tuple[tuple[int, tuple[int, ...]], ...]
    hat_cones: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    h_dist: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    radical_generators: tuple[tuple[int, ...], ...]
    full_generators: tuple[tuple[int, ...], ...] | None
    vanishing_faces: tuple[tuple[int, ...], ...]
    codim: int | None
    certificates: tuple[tuple[str, bool], ...]

    @classmethod
    def from_presentation(
        cls, qp: QuotientPresentation, ideal: IrrelevantIdeal, codim: int | float
    ) -> "QuotientRecord":
        fan = qp.fan
        return cls(
            fan_name=fan.name,
            sf_rank=qp.rank,
            pic_rank=qp.lattice.pic_rank,
            l=tuple((i, tuple(qp.l[i])) for i in fan.ray_ids),
            hat_cones=tuple(
                (key, tuple(fan.ray_ids[j] for j in face.generator_indices)) for key, face in qp.hat_cones.items()
            ),
            h_dist=tuple((key, tuple(h)) for key, h in qp.h_dist.items()),
            radical_generators=tuple(tuple(g) for g in ideal.radical.generators),
            full_generators=tuple(tuple(g) for g in ideal.full.generators) if ideal.full is not None else None,
            vanishing_faces=tuple(f.ray_ids for f in ideal.vanishing_faces),
            codim=None if codim == math.inf else int(codim),
            certificates=tuple(sorted(qp.certificates.items())),
        )

    def to_dict(self) -> dict:
        return {
            "fan": self.fan_name,
            "sf_rank": self.sf_rank,
            "pic_rank": self.pic_rank,
            "l": [{"ray": i, "vector": list(v)} for i, v in self.l],
            "hat_cones": [{"cone": list(k), "hat_rays": list(r)} for k, r in self.hat_cones],
            "h_dist": [{"cone": list(k), "h": list(h)} for k, h in self.h_dist],
            "irrelevant": {
                "radical_generators": [list(g) for g in self.radical_generators],
                "full_generators": [list(g) for g in self.full_generators] if self.full_generators is not None else None,
                "vanishing_faces": [list(f) for f in self.vanishing_faces],
            },
            "codim": self.codim if self.codim is not None else "inf",
            "certificates": dict(self.certificates),
        }


def parse_quotient_report(data: dict) -> QuotientRecord:
    """Rebuilds a QuotientRecord from the 'quotient' section of a report."""
    irrelevant = data["irrelevant"]
    full = irrelevant.get("full_generators")
    return QuotientRecord(
        fan_name=data["fan"],
        sf_rank=data["sf_rank"],
        pic_rank=data["pic_rank"],
        l=tuple((entry["ray"], tuple(entry["vector"])) for entry in data["l"]),
        hat_cones=tuple((tuple(e["cone"]), tuple(e["hat_rays"])) for e in data["hat_cones"]),
        h_dist=tuple((tuple(e["cone"]), tuple(e["h"])) for e in data["h_dist"]),
        radical_generators=tuple(tuple(g) for g in irrelevant["radical_generators"]),
        full_generators=tuple(tuple(g) for g in full) if full is not None else None,
        vanishing_faces=tuple(tuple(f) for f in irrelevant["vanishing_faces"]),
        codim=None if data["codim"] == "inf" else data["codim"],
        certificates=tuple(sorted(data["certificates"].items())),
    )
