import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy as sp

from exact_linalg.lattice import LatticeVector, as_integer_matrix, lattice_matrix, to_vector
from exact_linalg.normal_forms import hermite_basis, smith_normal_form

logger = logging.getLogger(__name__)


def _diagonal(D: np.ndarray) -> list[int]:
    return [int(D[i, i]) for i in range(min(D.shape))]


def _smith_rank(D: np.ndarray) -> int:
    return sum(1 for d in _diagonal(D) if d != 0)


def kernel_basis(A) -> list[LatticeVector]:
    """
    Basis of the integer kernel {x : A x = 0}.

    The columns of V beyond the rank of the Smith form span the kernel as a
    saturated lattice; they are returned in Hermite normal form.
    """
    A = as_integer_matrix(A)
    n = A.shape[1]
    if n == 0:
        return []
    _, D, V = smith_normal_form(A)
    r = _smith_rank(D)
    columns = [to_vector(V[:, j]) for j in range(r, n)]
    return hermite_basis(columns, n)


@dataclass(frozen=True)
class CokernelData:
    """
    The abelian group Z^m / Im(A).

    Attributes:
        free_rank: Rank of the free part.
        torsion_invariants: Invariant factors greater than one, each dividing the next.
        projection: (free_rank x m) matrix sending a codomain vector to its
            free-part coordinates.
    """

    free_rank: int
    torsion_invariants: tuple[int, ...]
    projection: np.ndarray = field(compare=False, repr=False)
    image_rank: int = 0

    @property
    def is_free(self) -> bool:
        return not self.torsion_invariants

    def project(self, v: Sequence[int]) -> LatticeVector:
        if self.free_rank == 0:
            return ()
        return to_vector(self.projection.dot(np.array(to_vector(v), dtype=object)))


def cokernel(A) -> CokernelData:
    """
    Free rank, torsion and free-part projection of the cokernel of A : Z^n -> Z^m.

    The projection rows are the last m - r rows of U (they annihilate Im A)
    brought to Hermite normal form, so the free-part coordinates are canonical.
    """
    A = as_integer_matrix(A)
    m = A.shape[0]
    U, D, _ = smith_normal_form(A)
    diagonal = [d for d in _diagonal(D) if d != 0]
    r = len(diagonal)
    torsion = tuple(d for d in diagonal if d > 1)
    rows = hermite_basis([to_vector(U[i]) for i in range(r, m)], m)
    projection = lattice_matrix(rows, m)
    logger.debug(f"Cokernel of {A.shape} matrix: free rank {m - r}, torsion {torsion}.")
    return CokernelData(free_rank=m - r, torsion_invariants=torsion, projection=projection, image_rank=r)


def solve_rational(A, b: Sequence) -> list[Fraction] | None:
    """
    Exact rational solution of A x = b.

    Free variables of the reduced row echelon form are set to zero. Returns
    None when the system is inconsistent.
    """
    A = as_integer_matrix(A)
    m, n = A.shape
    b = [Fraction(x) for x in b]
    if len(b) != m:
        raise ValueError(f"Right-hand side has length {len(b)}, expected {m}.")
    if m == 0:
        return [Fraction(0)] * n
    if n == 0:
        return [] if all(x == 0 for x in b) else None

    augmented = sp.Matrix(
        [[sp.Integer(int(A[i, j])) for j in range(n)] + [sp.Rational(b[i].numerator, b[i].denominator)] for i in range(m)]
    )
    reduced, pivots = augmented.rref()
    if n in pivots:
        return None

    solution = [Fraction(0)] * n
    for row, col in enumerate(pivots):
        value = reduced[row, n]
        solution[col] = Fraction(int(value.p), int(value.q))
    return solution


def solve_integer(A, b: Sequence[int]) -> LatticeVector | None:
    """
    Integer solution of A x = b via the Smith normal form, or None.

    With U A V = D the system becomes D z = U b, x = V z.
    """
    A = as_integer_matrix(A)
    m, n = A.shape
    if len(b) != m:
        raise ValueError(f"Right-hand side has length {len(b)}, expected {m}.")
    U, D, V = smith_normal_form(A)
    y = U.dot(np.array(to_vector(b), dtype=object)) if m else np.zeros(0, dtype=object)
    diagonal = _diagonal(D)
    z = [0] * n
    for i in range(m):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            if y[i] != 0:
                return None
            continue
        if y[i] % d != 0:
            return None
        z[i] = int(y[i]) // d
    if n == 0:
        return ()
    return to_vector(V.dot(np.array(z, dtype=object)))


def in_image(A, b: Sequence[int]) -> bool:
    return solve_integer(A, b) is not None
