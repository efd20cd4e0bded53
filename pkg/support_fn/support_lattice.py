"""
Lattice of integral support functions of a fan.

A support function is stored through its values on a finite set of
evaluation points: the rays first, then the extra Hilbert basis elements of
the maximal cones. On each maximal cone those values must come from one
linear functional, which gives the linear constraints cutting out SF(N, Δ)
inside Z^points. Values on Hilbert basis points being integers is exactly
integrality on the lattice points of each cone.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from config.errors import ErrorCode, ToriqError
from exact_linalg import (
    CokernelData,
    LatticeVector,
    cokernel,
    dot,
    kernel_basis,
    lattice_matrix,
    smith_normal_form,
    solve_integer,
    solve_rational,
    to_vector,
)
from fan_model import ConeKey, Fan, cone_containing, validate_fan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PicClass:
    """Coordinates of a class in the free group Pic(X)."""

    coordinates: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass(tuple(a + b for a, b in zip(self.coordinates, other.coordinates)))

    def __neg__(self) -> "PicClass":
        return PicClass(tuple(-a for a in self.coordinates))

    def scale(self, k: int) -> "PicClass":
        return PicClass(tuple(k * a for a in self.coordinates))


@dataclass(frozen=True)
class SupportFunction:
    """
    An integral Δ-linear support function.

    Attributes:
        coordinates: Coordinates in the SF basis of the owning lattice.
        ray_values: h(n_ρ) for every ray, in ray-id order.
        characters: m_σ as rational vectors, one per maximal cone key.
    """

    coordinates: tuple[int, ...]
    ray_values: tuple[int, ...]
    characters: dict[ConeKey, tuple[Fraction, ...]] = field(compare=False, hash=False, repr=False)

    @property
    def is_effective(self) -> bool:
        return all(v >= 0 for v in self.ray_values)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)


@dataclass(frozen=True)
class CoxComparison:
    """How SF relates to the ray-indexed lattice Z^{Δ(1)} under h -> (h(n_ρ))_ρ."""

    n_rays: int
    sf_rank: int
    index: int

    @property
    def is_isomorphism(self) -> bool:
        return self.sf_rank == self.n_rays and self.index == 1


class SupportLattice:
    """
    The free module SF(N, Δ) with a Hermite-reduced basis, the embedding
    ι : M -> SF and Pic(X) = SF / ι(M).
    """

    def __init__(self, fan: Fan, points: list[LatticeVector], basis: list[LatticeVector]):
        self.fan = fan
        self.points = points
        self.basis = basis
        n_rays = len(fan.ray_ids)
        d = fan.lattice_rank

        # rows: rays, columns: basis elements
        self.ray_matrix = lattice_matrix([[b[i] for b in basis] for i in range(n_rays)], self.rank)

        columns = []
        for i in range(d):
            e = tuple(1 if j == i else 0 for j in range(d))
            values = [dot(e, n) for n in fan.rays]
            coordinates = solve_integer(self.ray_matrix, values)
            if coordinates is None:
                raise ToriqError(
                    ErrorCode.INTERNAL_INCONSISTENCY, f"Linear function e{i}* is not in the support lattice."
                )
            columns.append(coordinates)
        # column i is ι(e_i*)
        self.iota_matrix = lattice_matrix(columns, self.rank).T if columns else np.zeros((self.rank, 0), dtype=object)
        self.pic: CokernelData = cokernel(self.iota_matrix)

    # --- Sizes ---

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lattice_rank(self) -> int:
        return self.fan.lattice_rank

    @property
    def pic_rank(self) -> int:
        return self.pic.free_rank

    def __repr__(self) -> str:
        return f"SupportLattice(fan={self.fan.name!r}, rank={self.rank}, pic_rank={self.pic_rank})"

    # --- Elements ---

    def element(self, coordinates: Sequence[int]) -> SupportFunction:
        """The support function with the given SF coordinates."""
        coordinates = to_vector(coordinates)
        if len(coordinates) != self.rank:
            raise ValueError(f"Expected {self.rank} coordinates, got {len(coordinates)}.")
        values = to_vector(self.ray_matrix.dot(np.array(coordinates, dtype=object))) if self.fan.ray_ids else ()
        characters = {}
        for key in self.fan.maximal_keys:
            rows = [self.fan.ray(i) for i in key]
            rhs = [values[self.fan.position(i)] for i in key]
            characters[key] = tuple(solve_rational(lattice_matrix(rows, self.lattice_rank), rhs))
        return SupportFunction(coordinates=coordinates, ray_values=values, characters=characters)

    def from_ray_values(self, values: Sequence[int]) -> SupportFunction:
        coordinates = solve_integer(self.ray_matrix, to_vector(values))
        if coordinates is None:
            raise ToriqError(
                ErrorCode.NON_INTEGRAL_RESTRICTION,
                f"Ray values {list(values)} do not define an integral support function.",
            )
        return self.element(coordinates)

    def zero(self) -> SupportFunction:
        return self.element((0,) * self.rank)

    def iota(self, m: Sequence[int]) -> SupportFunction:
        """The globally linear support function n -> <m, n>."""
        return self.element(self.iota_coordinates(m))

    def iota_coordinates(self, m: Sequence[int]) -> LatticeVector:
        m = to_vector(m)
        if len(m) != self.lattice_rank:
            raise ValueError(f"Expected a character of rank {self.lattice_rank}, got {len(m)} entries.")
        if not self.lattice_rank:
            return (0,) * self.rank
        return to_vector(self.iota_matrix.dot(np.array(m, dtype=object)))

    def preimage(self, coordinates: Sequence[int]) -> LatticeVector | None:
        """The m in M with ι(m) = h, or None when h is not globally linear."""
        return solve_integer(self.iota_matrix, to_vector(coordinates))

    # --- Evaluation and degree ---

    def evaluate(self, h: SupportFunction, n: Sequence[int]) -> Fraction | int:
        """h(n) for n in the support; integral on lattice points."""
        n = to_vector(n)
        key = cone_containing(self.fan, n)
        if key is None:
            raise ToriqError(ErrorCode.OUTSIDE_SUPPORT, f"{list(n)} is not in the support of {self.fan.name}.")
        sigma = self.fan.maximal_cones_containing(key)[0]
        value = sum(Fraction(a) * b for a, b in zip(h.characters[sigma], n))
        return int(value) if value.denominator == 1 else value

    def ray_values(self, h: SupportFunction) -> tuple[int, ...]:
        return h.ray_values

    def values_of(self, coordinates: Sequence[int]) -> LatticeVector:
        """Ray values of an SF coordinate vector without building a SupportFunction."""
        if not self.fan.ray_ids:
            return ()
        return to_vector(self.ray_matrix.dot(np.array(to_vector(coordinates), dtype=object)))

    def degree(self, h: SupportFunction | Sequence[int]) -> PicClass:
        coordinates = h.coordinates if isinstance(h, SupportFunction) else to_vector(h)
        return PicClass(self.pic.project(coordinates))

    def degree_lift(self, alpha: PicClass) -> LatticeVector | None:
        """Some SF coordinate vector of degree alpha, or None when unreachable."""
        if len(alpha.coordinates) != self.pic_rank:
            raise ToriqError(
                ErrorCode.PARSE_ERROR,
                f"Pic class needs {self.pic_rank} coordinates, got {len(alpha.coordinates)}.",
                {"pic_rank": self.pic_rank, "degree": list(alpha.coordinates)},
            )
        if self.pic_rank == 0:
            return (0,) * self.rank
        return solve_integer(self.pic.projection, alpha.coordinates)

    def quotient_group_data(self) -> tuple[int, int, int]:
        """Character lattice ranks (T̂, T, G) of 1 -> G -> T̂ -> T -> 1."""
        if not self.pic.is_free:
            raise ToriqError(
                ErrorCode.TORSION_PIC,
                f"Pic has torsion {list(self.pic.torsion_invariants)}.",
                {"torsion_invariants": list(self.pic.torsion_invariants)},
            )
        return self.rank, self.lattice_rank, self.pic_rank


def _evaluation_points(fan: Fan) -> list[LatticeVector]:
    points = list(fan.rays)
    for cone in fan.maximal_cones.values():
        for h in cone.hilbert_basis():
            if h not in points:
                points.append(h)
    return points


def compute_SF(fan: Fan) -> SupportLattice:
    """
    Computes a Z-basis of SF(N, Δ), the embedding ι and Pic(X).

    Raises:
        ToriqError: INVALID_FAN when the fan violates an axiom, SPAN_DEFICIENT
            when the rays do not span N_R, TORSION_PIC when Pic has torsion.
    """
    report = validate_fan(fan)
    if not report.valid:
        raise ToriqError(
            ErrorCode.INVALID_FAN,
            f"Fan '{fan.name}' is not valid.",
            {"violations": [v.to_dict() for v in report.errors]},
        )
    if not fan.spans():
        raise ToriqError(ErrorCode.SPAN_DEFICIENT, f"Rays of '{fan.name}' do not span N_R.")

    d = fan.lattice_rank
    points = _evaluation_points(fan)
    constraints = []
    for cone in fan.maximal_cones.values():
        inside = [i for i, p in enumerate(points) if cone.contains(p)]
        relations = kernel_basis(lattice_matrix([points[i] for i in inside], d).T)
        for w in relations:
            row = [0] * len(points)
            for coefficient, i in zip(w, inside):
                row[i] = coefficient
            constraints.append(row)

    basis = kernel_basis(lattice_matrix(constraints, len(points)))
    lattice = SupportLattice(fan, points, basis)
    logger.info(
        f"SF({fan.name}): {len(points)} evaluation points, {len(constraints)} relations, "
        f"rank {lattice.rank}, Pic rank {lattice.pic_rank}."
    )
    if not lattice.pic.is_free:
        raise ToriqError(
            ErrorCode.TORSION_PIC,
            f"Pic({fan.name}) has torsion {list(lattice.pic.torsion_invariants)}; only free Pic is supported.",
            {"torsion_invariants": list(lattice.pic.torsion_invariants)},
        )
    return lattice


def compare_with_cox(lattice: SupportLattice) -> CoxComparison:
    """Index of the ray-value image of SF in its saturation, plus ranks."""
    _, D, _ = smith_normal_form(lattice.ray_matrix)
    index = 1
    for i in range(min(D.shape)):
        if D[i, i] != 0:
            index *= int(D[i, i])
    return CoxComparison(n_rays=len(lattice.fan.ray_ids), sf_rank=lattice.rank, index=index)


def evaluate(lattice: SupportLattice, h: SupportFunction, n: Sequence[int]) -> Fraction | int:
    return lattice.evaluate(h, n)


def iota(lattice: SupportLattice, m: Sequence[int]) -> SupportFunction:
    return lattice.iota(m)


def degree(lattice: SupportLattice, h: SupportFunction) -> PicClass:
    return lattice.degree(h)


def quotient_group_data(lattice: SupportLattice) -> tuple[int, int, int]:
    return lattice.quotient_group_data()


def ray_values(h: SupportFunction) -> tuple[int, ...]:
    return h.ray_values


def is_effective(h: SupportFunction) -> bool:
    return h.is_effective
