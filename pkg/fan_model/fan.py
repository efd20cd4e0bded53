import logging
from typing import Iterable, Sequence

from config.errors import ErrorCode, ToriqError
from exact_linalg import LatticeVector, is_zero, lattice_matrix, primitive, rank, to_vector
from polyhedral import Cone

logger = logging.getLogger(__name__)

ConeKey = tuple[int, ...]


class Fan:
    """
    A rational polyhedral fan given by primitive rays and maximal cones.

    Cones are identified by the sorted tuple of their ray ids, the zero cone
    by (). Ray ids default to 0..n-1; subfans keep the ids of their parent.

    Args:
        rays: Ray generators; non-primitive vectors are normalized with a warning.
        maximal_cones: Each maximal cone as a list of ray ids generating it.
        ray_ids: Optional explicit ids, one per ray.
        lattice_rank: Rank of N, required when there are no rays.
        name: Optional label used in logs and reports.
    """

    def __init__(
        self,
        rays: Sequence[Sequence[int]],
        maximal_cones: Iterable[Iterable[int]],
        ray_ids: Sequence[int] | None = None,
        lattice_rank: int | None = None,
        name: str = "fan",
    ):
        self.name = name
        vectors = [to_vector(r) for r in rays]
        if lattice_rank is None:
            if not vectors:
                raise ToriqError(ErrorCode.INVALID_FAN, "lattice_rank is required for a fan without rays.")
            lattice_rank = len(vectors[0])
        self.lattice_rank = lattice_rank
        if any(len(v) != lattice_rank for v in vectors):
            raise ToriqError(ErrorCode.INVALID_FAN, f"Every ray must have length {lattice_rank}.")

        self.ray_ids: tuple[int, ...] = tuple(ray_ids) if ray_ids is not None else tuple(range(len(vectors)))
        if len(self.ray_ids) != len(vectors) or len(set(self.ray_ids)) != len(vectors):
            raise ToriqError(ErrorCode.INVALID_FAN, "Ray ids must be distinct, one per ray.")

        self._rays: dict[int, LatticeVector] = {}
        for ray_id, v in zip(self.ray_ids, vectors):
            if is_zero(v):
                raise ToriqError(ErrorCode.INVALID_FAN, f"Ray {ray_id} is the zero vector.")
            p = primitive(v)
            if p != v:
                logger.warning(f"Ray {ray_id} = {v} is not primitive; using {p}.")
            self._rays[ray_id] = p
        if len(set(self._rays.values())) != len(self._rays):
            raise ToriqError(ErrorCode.INVALID_FAN, "Two rays have the same primitive generator.")

        self.maximal_keys: list[ConeKey] = []
        for cone in maximal_cones:
            key = tuple(sorted(set(int(i) for i in cone)))
            unknown = [i for i in key if i not in self._rays]
            if unknown:
                raise ToriqError(
                    ErrorCode.UNKNOWN_RAY, f"Cone {list(cone)} references unknown rays {unknown}.", {"rays": unknown}
                )
            if key not in self.maximal_keys:
                self.maximal_keys.append(key)

        self.maximal_cones: dict[ConeKey, Cone] = {
            key: Cone([self._rays[i] for i in key], ambient_rank=lattice_rank) for key in self.maximal_keys
        }
        self.cones: dict[ConeKey, Cone] = self._complete_faces()

    def _complete_faces(self) -> dict[ConeKey, Cone]:
        """All faces of the pointed maximal cones, keyed by ray ids."""
        cones: dict[ConeKey, Cone] = {(): Cone([], ambient_rank=self.lattice_rank)}
        for key, cone in self.maximal_cones.items():
            if not cone.is_pointed:
                continue
            ids = self._ids_of_rays(key, cone)
            for face in cone.face_lattice():
                face_key = tuple(sorted(ids[i] for i in face.generator_indices))
                if face_key not in cones:
                    cones[face_key] = face.cone() if face_key != key else cone
        return dict(sorted(cones.items(), key=lambda item: (item[1].dim, item[0])))

    def _ids_of_rays(self, key: ConeKey, cone: Cone) -> list[int]:
        by_vector = {self._rays[i]: i for i in key}
        return [by_vector[r] for r in cone.rays]

    # --- Accessors ---

    def ray(self, ray_id: int) -> LatticeVector:
        if ray_id not in self._rays:
            raise ToriqError(ErrorCode.UNKNOWN_RAY, f"Unknown ray id {ray_id}.", {"ray": ray_id})
        return self._rays[ray_id]

    @property
    def rays(self) -> list[LatticeVector]:
        """Primitive ray generators in ray-id order."""
        return [self._rays[i] for i in self.ray_ids]

    def position(self, ray_id: int) -> int:
        self.ray(ray_id)
        return self.ray_ids.index(ray_id)

    def cone(self, key: Iterable[int]) -> Cone:
        key = tuple(sorted(key))
        if key not in self.cones:
            raise ToriqError(ErrorCode.INVALID_FAN, f"{key} is not a cone of {self.name}.")
        return self.cones[key]

    def __repr__(self) -> str:
        return (
            f"Fan(name={self.name!r}, lattice_rank={self.lattice_rank}, rays={len(self.ray_ids)}, "
            f"maximal_cones={len(self.maximal_keys)})"
        )

    # --- Structure ---

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cones.values()), default=0)

    def spans(self) -> bool:
        """True when the rays span N_R."""
        return rank(lattice_matrix(self.rays, self.lattice_rank)) == self.lattice_rank

    def maximal_cones_containing(self, key: Iterable[int]) -> list[ConeKey]:
        key = set(key)
        return [m for m in self.maximal_keys if key <= set(m)]

    def face_poset(self) -> list[tuple[ConeKey, ConeKey]]:
        """All pairs (tau, sigma) with tau a face of sigma, tau != sigma."""
        keys = list(self.cones)
        return [(t, s) for t in keys for s in keys if t != s and set(t) <= set(s)]

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.maximal_cones.values())

    def is_smooth(self) -> bool:
        return all(c.is_smooth() for c in self.maximal_cones.values())

    def is_complete(self) -> bool:
        """
        Every maximal cone is full-dimensional and every codimension-one cone
        lies in exactly two maximal cones.
        """
        d = self.lattice_rank
        if d == 0:
            return True
        if not self.maximal_cones or any(c.dim != d for c in self.maximal_cones.values()):
            return False
        walls = [k for k, c in self.cones.items() if c.dim == d - 1]
        return all(len(self.maximal_cones_containing(w)) == 2 for w in walls)


def star_subfan(fan: Fan, ray_id: int) -> Fan:
    """The subfan generated by the maximal cones containing the given ray."""
    fan.ray(ray_id)
    maximal = fan.maximal_cones_containing([ray_id])
    used = sorted({i for key in maximal for i in key})
    logger.debug(f"Star of ray {ray_id} in {fan.name}: {len(maximal)} maximal cones.")
    return Fan(
        rays=[fan.ray(i) for i in used],
        maximal_cones=maximal,
        ray_ids=used,
        lattice_rank=fan.lattice_rank,
        name=f"{fan.name}/star({ray_id})",
    )


def cone_containing(fan: Fan, n: Sequence[int]) -> ConeKey | None:
    """
    Key of the minimal cone of the fan containing n, or None when n lies
    outside the support.
    """
    n = to_vector(n)
    containing = [key for key, cone in fan.cones.items() if cone.is_pointed and cone.contains(n)]
    if not containing:
        return None
    return min(containing, key=lambda key: (fan.cones[key].dim, key))
