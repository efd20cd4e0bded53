"""
Double description method for rational polyhedral cones.

Converts {x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}
into extremal rays and a lineality basis. Constraints are inserted in
lexicographic order and adjacency is decided by the algebraic rank test, so
the output is exact and deterministic.
"""

import logging
from typing import Sequence

from exact_linalg import LatticeVector, dot, is_zero, kernel_basis, lattice_matrix, primitive, rank

logger = logging.getLogger(__name__)


def _combine(p: LatticeVector, n: LatticeVector, a: LatticeVector) -> LatticeVector:
    """Positive combination of p and n lying on the hyperplane a^perp."""
    ap, an = dot(a, p), dot(a, n)
    return primitive(tuple(ap * y - an * x for x, y in zip(p, n)))


def double_description(
    inequalities: Sequence[Sequence[int]],
    equations: Sequence[Sequence[int]],
    dim: int,
) -> tuple[list[LatticeVector], list[LatticeVector]]:
    """
    Computes generators of a cone given by linear constraints.

    Args:
        inequalities: Normals a with <a, x> >= 0.
        equations: Normals e with <e, x> = 0.
        dim: Ambient dimension.

    Returns:
        (rays, lines): primitive extremal rays modulo the lineality space,
        sorted lexicographically, and a basis of the lineality space.
    """
    equations = [tuple(e) for e in equations if not is_zero(e)]
    constraints = sorted({tuple(int(x) for x in a) for a in inequalities if not is_zero(a)})

    lines: list[LatticeVector] = kernel_basis(lattice_matrix(equations, dim))
    rays: list[LatticeVector] = []
    tight: list[set[int]] = []

    for k, a in enumerate(constraints):
        l0_index = next((i for i, line in enumerate(lines) if dot(a, line) != 0), None)
        if l0_index is not None:
            l0 = lines[l0_index]
            if dot(a, l0) < 0:
                l0 = tuple(-x for x in l0)
            new_lines = [_combine(l0, line, a) for i, line in enumerate(lines) if i != l0_index]
            rays = [_combine(l0, r, a) if dot(a, r) != 0 else r for r in rays]
            # projected rays become tight at a; l0 is tight at every earlier constraint
            tight = [t | {k} for t in tight]
            rays.append(primitive(l0))
            tight.append(set(range(k)))
            lines = [line for line in new_lines if not is_zero(line)]
            continue

        values = [dot(a, r) for r in rays]
        positive = [i for i, v in enumerate(values) if v > 0]
        negative = [i for i, v in enumerate(values) if v < 0]
        zero = [i for i, v in enumerate(values) if v == 0]

        target_rank = dim - len(lines) - 2
        new_rays = [rays[i] for i in positive] + [rays[i] for i in zero]
        new_tight = [tight[i] for i in positive] + [tight[i] | {k} for i in zero]
        for i in positive:
            for j in negative:
                common = tight[i] & tight[j]
                rows = [constraints[c] for c in sorted(common)] + equations
                if rank(lattice_matrix(rows, dim)) != target_rank:
                    continue
                new_rays.append(_combine(rays[i], rays[j], a))
                new_tight.append(common | {k})

        seen: dict[LatticeVector, set[int]] = {}
        for r, t in zip(new_rays, new_tight):
            if r in seen:
                seen[r] |= t
            else:
                seen[r] = t
        rays = list(seen)
        tight = [seen[r] for r in rays]

    logger.debug(
        f"Double description: {len(constraints)} inequalities, {len(equations)} equations "
        f"-> {len(rays)} rays, {len(lines)} lines."
    )
    return sorted(rays), lines
