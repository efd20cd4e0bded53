import logging
import re
from pathlib import Path

from cli.fan_document import FanDocument
from config.errors import ErrorCode, ToriqError
from config.settings import CORPUS_DIR

logger = logging.getLogger(__name__)

HIRZEBRUCH_PATTERN = re.compile(r"^hirzebruch_(-?\d+)$")


def hirzebruch_fan(a: int) -> FanDocument:
    """The fan of the Hirzebruch surface F_a."""
    return FanDocument(
        lattice_rank=2,
        rays=[[1, 0], [0, 1], [-1, a], [0, -1]],
        cones=[[0, 1], [1, 2], [2, 3], [3, 0]],
        name=f"hirzebruch_{a}",
        metadata={"family": "hirzebruch", "a": str(a)},
    )


def corpus_names(corpus_dir: Path = CORPUS_DIR) -> list[str]:
    if not corpus_dir.is_dir():
        return []
    return sorted(p.stem for p in corpus_dir.glob("*.json"))


def resolve_fan(source: str, corpus_dir: Path = CORPUS_DIR) -> FanDocument:
    """
    Loads a fan from a file path, a bundled corpus name or a
    'hirzebruch_<a>' family member.
    """
    path = Path(source)
    if path.is_file():
        return FanDocument.load(path)
    if (corpus_dir / f"{source}.json").is_file():
        return FanDocument.load(corpus_dir / f"{source}.json")
    match = HIRZEBRUCH_PATTERN.match(source)
    if match:
        logger.info(f"Generating {source} from the Hirzebruch family.")
        return hirzebruch_fan(int(match.group(1)))
    raise ToriqError(
        ErrorCode.IO_ERROR,
        f"'{source}' is neither a file nor a corpus fan. Known fans: {corpus_names(corpus_dir)}.",
    )
