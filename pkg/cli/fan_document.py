import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from config.errors import ErrorCode, ToriqError
from exact_linalg import primitive
from fan_model import Fan

logger = logging.getLogger(__name__)


@dataclass
class FanDocument:
    """
    A fan as read from JSON.

    Attributes:
        lattice_rank: Rank of N.
        rays: Integer ray vectors, normalized to primitive on load.
        cones: Maximal cones as lists of ray indices.
        name: Label used in logs and report file names.
        metadata: Free-form string map carried into reports.
    """

    lattice_rank: int
    rays: list[list[int]]
    cones: list[list[int]]
    name: str = "fan"
    metadata: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Any) -> "FanDocument":
        if not isinstance(data, dict):
            raise ToriqError(ErrorCode.PARSE_ERROR, "A fan document must be a JSON object.")
        missing = [k for k in ("rays", "cones") if k not in data]
        if missing:
            raise ToriqError(ErrorCode.PARSE_ERROR, f"Fan document is missing {missing}.")
        try:
            rays = [[int(x) for x in r] for r in data["rays"]]
            cones = [[int(i) for i in c] for c in data["cones"]]
            lattice_rank = int(data.get("lattice_rank", len(rays[0]) if rays else 0))
        except (TypeError, ValueError) as e:
            raise ToriqError(ErrorCode.PARSE_ERROR, f"Rays and cones must be integer lists: {e}")
        if any(len(r) != lattice_rank for r in rays):
            raise ToriqError(ErrorCode.PARSE_ERROR, f"Every ray must have {lattice_rank} entries.")

        normalized = []
        for i, r in enumerate(rays):
            p = list(primitive(r))
            if p != r:
                logger.warning(f"Ray {i} = {r} is not primitive; using {p}.")
            normalized.append(p)
        metadata = {str(k): str(v) for k, v in dict(data.get("metadata", {})).items()}
        return cls(
            lattice_rank=lattice_rank,
            rays=normalized,
            cones=cones,
            name=str(data.get("name", "fan")),
            metadata=metadata,
        )

    @classmethod
    def load(cls, path: str | Path) -> "FanDocument":
        """
        Reads a fan document from a JSON file.

        Raises:
            ToriqError: IO_ERROR if the file cannot be read, PARSE_ERROR if
                it is not a well-formed fan document.
        """
        path = Path(path)
        logger.info(f"Loading fan document from {path}...")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ToriqError(ErrorCode.IO_ERROR, f"Cannot read {path}: {e}")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ToriqError(ErrorCode.PARSE_ERROR, f"{path} is not valid JSON: {e}")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "lattice_rank": self.lattice_rank,
            "rays": self.rays,
            "cones": self.cones,
            "name": self.name,
            "metadata": self.metadata,
        }

    def to_fan(self) -> Fan:
        return Fan(self.rays, self.cones, lattice_rank=self.lattice_rank, name=self.name)
