import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from config.errors import ErrorCode, ToriqError
from exact_linalg import (
    LatticeVector,
    dot,
    hermite_basis,
    is_zero,
    kernel_basis,
    lattice_matrix,
    primitive,
    rank,
    smith_normal_form,
    to_vector,
)
from polyhedral.double_description import double_description

logger = logging.getLogger(__name__)


def _infer_rank(vectors: list[LatticeVector], ambient_rank: int | None) -> int:
    if ambient_rank is not None:
        if any(len(v) != ambient_rank for v in vectors):
            raise ValueError(f"All vectors must have length {ambient_rank}.")
        return ambient_rank
    if not vectors:
        raise ValueError("ambient_rank is required when no vectors are given.")
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise ValueError("All vectors must have the same length.")
    return width


class Cone:
    """
    A rational polyhedral cone carried in both generator and facet form.

    The generator form is ``rays`` (primitive extremal rays; in input order for
    pointed cones) together with a ``lineality`` basis. The facet form is
    ``facet_normals`` (primitive, irredundant, lexicographically sorted) plus
    ``equations``, a basis of the orthogonal complement of the linear span.

    Args:
        generators: Vectors generating the cone. Zero vectors are ignored.
        ambient_rank: Ambient lattice rank, required when there are no generators.
    """

    def __init__(self, generators: Iterable[Sequence[int]], ambient_rank: int | None = None):
        vectors = [to_vector(g) for g in generators]
        self.ambient_rank = _infer_rank(vectors, ambient_rank)
        d = self.ambient_rank

        unique: list[LatticeVector] = []
        for g in vectors:
            p = primitive(g)
            if not is_zero(p) and p not in unique:
                unique.append(p)

        normals, equations = double_description(unique, [], d)
        self.facet_normals: tuple[LatticeVector, ...] = tuple(normals)
        self.equations: tuple[LatticeVector, ...] = tuple(hermite_basis(equations, d))
        self.lineality: tuple[LatticeVector, ...] = tuple(
            kernel_basis(lattice_matrix(list(self.facet_normals) + list(self.equations), d))
        )

        if not self.lineality:
            self.rays: tuple[LatticeVector, ...] = tuple(g for g in unique if self._is_extremal(g))
        else:
            rays, _ = double_description(self.facet_normals, self.equations, d)
            self.rays = tuple(rays)

        self._hilbert_basis: list[LatticeVector] | None = None
        self._faces: list[Face] | None = None

    @classmethod
    def from_inequalities(
        cls,
        normals: Iterable[Sequence[int]],
        equations: Iterable[Sequence[int]] = (),
        ambient_rank: int | None = None,
    ) -> "Cone":
        """Builds the cone {x : <a, x> >= 0, <e, x> = 0} from possibly redundant constraints."""
        normals = [to_vector(a) for a in normals]
        equations = [to_vector(e) for e in equations]
        d = _infer_rank(normals + equations, ambient_rank)
        rays, lines = double_description(normals, equations, d)
        generators = list(rays) + list(lines) + [tuple(-x for x in line) for line in lines]
        return cls(generators, ambient_rank=d)

    def _is_extremal(self, g: LatticeVector) -> bool:
        tight = [f for f in self.facet_normals if dot(f, g) == 0]
        rows = tight + list(self.equations)
        return rank(lattice_matrix(rows, self.ambient_rank)) == self.ambient_rank - 1

    # --- Basic properties ---

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def generators(self) -> list[LatticeVector]:
        """Rays followed by the lineality basis in both directions."""
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in v) for v in self.lineality]

    def __repr__(self) -> str:
        return (
            f"Cone(ambient_rank={self.ambient_rank}, dim={self.dim}, "
            f"rays={list(self.rays)}, lineality_dim={self.lineality_dim})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone) or other.ambient_rank != self.ambient_rank:
            return False
        if other.dim != self.dim or other.lineality_dim != self.lineality_dim:
            return False
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.dim, self.lineality_dim, len(self.rays)))

    # --- Membership ---

    def contains(self, v: Sequence[int], strict: bool = False) -> bool:
        """
        Tests membership, or relative-interior membership when strict is True.
        """
        if any(dot(e, v) != 0 for e in self.equations):
            return False
        if strict:
            return all(dot(f, v) > 0 for f in self.facet_normals)
        return all(dot(f, v) >= 0 for f in self.facet_normals)

    # --- Duality ---

    def dual_cone(self) -> "Cone":
        """The dual cone {u : <u, v> >= 0 for all v in the cone}."""
        generators = list(self.facet_normals) + list(self.equations) + [tuple(-x for x in e) for e in self.equations]
        return Cone(generators, ambient_rank=self.ambient_rank)

    # --- Faces ---

    def _require_pointed(self, operation: str):
        if not self.is_pointed:
            raise ToriqError(
                ErrorCode.NOT_POINTED,
                f"{operation} requires a strongly convex cone; lineality dimension is {self.lineality_dim}.",
            )

    def face_from_rays(self, indices: Iterable[int]) -> "Face | None":
        """
        Returns the face whose extremal rays are exactly rays[indices], or None
        when those rays do not span a face.
        """
        self._require_pointed("face_from_rays")
        chosen = tuple(sorted(set(indices)))
        normals = tuple(f for f in self.facet_normals if all(dot(f, self.rays[i]) == 0 for i in chosen))
        closure = tuple(
            i for i, r in enumerate(self.rays) if all(dot(f, r) == 0 for f in normals)
        )
        if closure != chosen:
            return None
        return Face(parent=self, generator_indices=chosen, defining_normals=normals)

    def face_lattice(self) -> list["Face"]:
        """
        All faces, from the zero face up to the cone itself, ordered by
        dimension and then by ray indices.
        """
        self._require_pointed("face_lattice")
        if self._faces is not None:
            return self._faces

        top = tuple(range(len(self.rays)))
        seen = {top}
        queue = deque([top])
        while queue:
            current = queue.popleft()
            for f in self.facet_normals:
                subset = tuple(i for i in current if dot(f, self.rays[i]) == 0)
                if len(subset) < len(current) and subset not in seen:
                    seen.add(subset)
                    queue.append(subset)
        faces = [self.face_from_rays(indices) for indices in seen]
        self._faces = sorted(faces, key=lambda face: (face.dim, face.generator_indices))
        logger.debug(f"Face lattice of {self!r}: {len(self._faces)} faces.")
        return self._faces

    def face_duality(self) -> list[tuple["Face", "Face"]]:
        """
        Pairs every face F with its dual face (dual cone intersected with F^perp)
        as a Face of dual_cone(). Requires a full-dimensional pointed cone.
        """
        self._require_pointed("face_duality")
        if not self.is_full_dimensional:
            raise ToriqError(ErrorCode.NOT_POINTED, "face_duality requires a full-dimensional cone.")
        dual = self.dual_cone()
        index = {r: i for i, r in enumerate(dual.rays)}
        pairs = []
        for face in self.face_lattice():
            dual_face = dual.face_from_rays(index[n] for n in face.defining_normals)
            pairs.append((face, dual_face))
        return pairs

    # --- Lattice points ---

    def relative_interior_point(self) -> LatticeVector:
        """
        An integral point in the relative interior: the sum of the extremal rays.
        """
        self._require_pointed("relative_interior_point")
        if self.dim == 0:
            raise ToriqError(ErrorCode.ZERO_CONE, "The zero cone has no relative interior point.")
        point = tuple(sum(col) for col in zip(*self.rays))
        if not self.contains(point, strict=True):
            raise ToriqError(
                ErrorCode.INTERNAL_INCONSISTENCY,
                f"Sum of rays {point} is not in the relative interior of {self!r}.",
            )
        return point

    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def is_smooth(self) -> bool:
        """Simplicial with rays forming part of a lattice basis."""
        if not self.is_pointed or not self.is_simplicial():
            return False
        if not self.rays:
            return True
        _, D, _ = smith_normal_form(lattice_matrix(self.rays, self.ambient_rank))
        return all(D[i, i] == 1 for i in range(len(self.rays)))

    def hilbert_basis(self) -> list[LatticeVector]:
        if self._hilbert_basis is None:
            from polyhedral.semigroup import hilbert_basis

            self._hilbert_basis = hilbert_basis(self)
        return list(self._hilbert_basis)


@dataclass(frozen=True)
class Face:
    """
    A face of a pointed cone, identified by the sorted indices of its rays.

    ``defining_normals`` are the facet normals of the parent vanishing on the
    face; together with the parent's equations they generate the dual face.
    """

    parent: Cone = field(compare=False, repr=False)
    generator_indices: tuple[int, ...]
    defining_normals: tuple[LatticeVector, ...] = field(compare=False)

    @property
    def rays(self) -> list[LatticeVector]:
        return [self.parent.rays[i] for i in self.generator_indices]

    @property
    def dim(self) -> int:
        return rank(lattice_matrix(self.rays, self.parent.ambient_rank))

    def cone(self) -> Cone:
        return Cone(self.rays, ambient_rank=self.parent.ambient_rank)

    def is_face_of(self, other: "Face") -> bool:
        return set(self.generator_indices) <= set(other.generator_indices)

    def dual(self) -> Cone:
        """The dual face: the parent's dual cone intersected with this face's orthogonal complement."""
        equations = self.parent.equations
        generators = list(self.defining_normals) + list(equations) + [tuple(-x for x in e) for e in equations]
        return Cone(generators, ambient_rank=self.parent.ambient_rank)


def dual_cone(c: Cone) -> Cone:
    return c.dual_cone()


def face_lattice(c: Cone) -> list[Face]:
    return c.face_lattice()


def hilbert_basis(c: Cone) -> list[LatticeVector]:
    return c.hilbert_basis()


def relative_interior_point(c: Cone) -> LatticeVector:
    return c.relative_interior_point()


def is_simplicial(c: Cone) -> bool:
    return c.is_simplicial()
