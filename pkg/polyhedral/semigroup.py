"""
Hilbert bases of pointed rational cones.

The cone is written in coordinates of its saturated span lattice, split by a
pulling triangulation into simplicial cones, and the lattice points of every
fundamental parallelepiped are collected. The irreducible elements of that
finite candidate set form the Hilbert basis.
"""

import itertools
import logging
import math
from fractions import Fraction

import sympy as sp

from config.errors import ErrorCode, ToriqError
from exact_linalg import (
    LatticeVector,
    cokernel,
    dot,
    is_zero,
    kernel_basis,
    lattice_matrix,
    smith_normal_form,
    solve_integer,
    to_vector,
)
from polyhedral.cone import Cone

logger = logging.getLogger(__name__)


def triangulate(points: list[LatticeVector], indices: tuple[int, ...], dim: int) -> list[tuple[int, ...]]:
    """
    Pulling triangulation of the cone spanned by points[indices].

    Every simplex is a sorted tuple of `dim` indices. The first index is
    joined to the triangulations of all facets not containing it.
    """
    if len(indices) == dim:
        return [tuple(sorted(indices))]
    ambient = len(points[indices[0]])
    cone = Cone([points[i] for i in indices], ambient_rank=ambient)
    apex = indices[0]
    simplices = []
    for normal in cone.facet_normals:
        if dot(normal, points[apex]) == 0:
            continue
        facet = tuple(i for i in indices if dot(normal, points[i]) == 0)
        for simplex in triangulate(points, facet, dim - 1):
            simplices.append(tuple(sorted(simplex + (apex,))))
    return simplices


def _parallelepiped_points(rows: list[LatticeVector]) -> list[LatticeVector]:
    """Nonzero lattice points sum(lambda_i v_i) with 0 <= lambda_i < 1."""
    k = len(rows)
    V = lattice_matrix(rows, k)
    _, D, W = smith_normal_form(V)
    W_inv = sp.Matrix(W.tolist()).inv()
    V_inv = sp.Matrix(V.tolist()).inv()
    ranges = [range(int(D[i, i])) for i in range(k)]

    points = []
    for y in itertools.product(*ranges):
        x = [sum(y[i] * int(W_inv[i, j]) for i in range(k)) for j in range(k)]
        coefficients = []
        for j in range(k):
            value = sum(x[i] * V_inv[i, j] for i in range(k))
            lam = Fraction(int(sp.Rational(value).p), int(sp.Rational(value).q))
            coefficients.append(lam - math.floor(lam))
        point = tuple(sum(coefficients[i] * rows[i][j] for i in range(k)) for j in range(k))
        if is_zero(point):
            continue
        points.append(tuple(int(p) for p in point))
    return points


def hilbert_basis(cone: Cone) -> list[LatticeVector]:
    """
    The unique minimal generating set of the semigroup cone ∩ Z^d.

    Raises:
        ToriqError: NOT_POINTED if the cone has a lineality space.
    """
    if not cone.is_pointed:
        raise ToriqError(
            ErrorCode.NOT_POINTED,
            f"Hilbert basis requires a pointed cone; lineality dimension is {cone.lineality_dim}.",
        )
    if cone.dim == 0:
        return []

    d, k = cone.ambient_rank, cone.dim
    span_basis = kernel_basis(lattice_matrix(cone.equations, d))
    basis_transpose = lattice_matrix(span_basis, d).T
    local_rays = [solve_integer(basis_transpose, r) for r in cone.rays]

    local_cone = Cone(local_rays, ambient_rank=k)
    candidates = set(local_rays)
    simplices = triangulate(local_rays, tuple(range(len(local_rays))), k)
    for simplex in simplices:
        candidates.update(_parallelepiped_points([local_rays[i] for i in simplex]))

    irreducible = []
    for x in candidates:
        reducible = any(
            y != x and local_cone.contains(tuple(a - b for a, b in zip(x, y))) for y in candidates
        )
        if not reducible:
            irreducible.append(x)

    result = sorted(
        tuple(sum(c * span_basis[i][j] for i, c in enumerate(x)) for j in range(d)) for x in irreducible
    )
    logger.debug(
        f"Hilbert basis: {len(simplices)} simplices, {len(candidates)} candidates, {len(result)} elements."
    )
    return result


def semigroup_generators(cone: Cone) -> list[LatticeVector]:
    """
    A finite generating set of the semigroup cone ∩ Z^d, lineality allowed.

    Pointed cones return their Hilbert basis. Otherwise the Hilbert basis of
    the image modulo the lineality lattice is lifted and the lineality basis
    is added in both directions.
    """
    if cone.is_pointed:
        return cone.hilbert_basis()
    d = cone.ambient_rank
    lines = list(cone.lineality)
    quotient = cokernel(lattice_matrix(lines, d).T)
    projection = quotient.projection
    image = Cone([quotient.project(g) for g in cone.rays], ambient_rank=quotient.free_rank)
    lifts = []
    for h in image.hilbert_basis():
        x = solve_integer(projection, h)
        lifts.append(to_vector(x))
    negated = [tuple(-a for a in v) for v in lines]
    return sorted(lifts) + lines + negated


def interior_ideal_generators(cone: Cone) -> list[LatticeVector]:
    """
    Minimal generators of the ideal of lattice points in the relative interior.

    These are the level-one Hilbert basis elements of the homogenized cone
    {(x, t) : <f, x> >= t for every facet normal f, t >= 0}. The zero cone
    returns [0], the generator of the unit ideal.
    """
    if not cone.is_pointed:
        raise ToriqError(ErrorCode.NOT_POINTED, "Interior ideal requires a pointed cone.")
    d = cone.ambient_rank
    normals = [tuple(f) + (-1,) for f in cone.facet_normals] + [(0,) * d + (1,)]
    equations = [tuple(e) + (0,) for e in cone.equations]
    homogenized = Cone.from_inequalities(normals, equations, ambient_rank=d + 1)
    generators = sorted(tuple(h[:d]) for h in homogenized.hilbert_basis() if h[d] == 1)
    logger.debug(f"Interior ideal of {cone!r}: {len(generators)} generators.")
    return generators
