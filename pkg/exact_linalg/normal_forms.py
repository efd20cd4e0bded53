import logging
from typing import Iterable, Sequence

import numpy as np
import sympy as sp
from sympy import ZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from config.errors import ErrorCode, ToriqError
from exact_linalg.lattice import (
    LatticeVector,
    as_integer_matrix,
    determinant,
    from_sympy,
    identity,
    is_zero,
    to_sympy,
    to_vector,
)

logger = logging.getLogger(__name__)


def _certify_smith(A: np.ndarray, U: np.ndarray, D: np.ndarray, V: np.ndarray):
    """Checks U A V = D, unimodularity and the divisibility chain."""
    problems = []
    if not (U.dot(A).dot(V) == D).all():
        problems.append("U A V != D")
    if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        problems.append("transform is not unimodular")
    off_diagonal = [D[i, j] for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j]
    if any(x != 0 for x in off_diagonal):
        problems.append("D is not diagonal")
    diagonal = [D[i, i] for i in range(min(D.shape))]
    for a, b in zip(diagonal, diagonal[1:]):
        if (a == 0 and b != 0) or (a != 0 and b % a != 0):
            problems.append(f"divisibility fails at {a}, {b}")
            break
    if problems:
        raise ToriqError(
            ErrorCode.INTERNAL_INCONSISTENCY,
            f"Smith decomposition of a {A.shape} matrix is wrong: {'; '.join(problems)}.",
        )


def smith_normal_form(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Computes the Smith normal form of an integer matrix.

    The decomposition comes from sympy over ZZ; signs are normalized so the
    diagonal is nonnegative and the result is certified before returning.

    Args:
        A: An m x n integer matrix (any shape, zero allowed).

    Returns:
        A tuple (U, D, V) of object-dtype matrices with U @ A @ V == D,
        U and V unimodular, D diagonal with nonnegative entries and
        d_i | d_{i+1}.
    """
    A = as_integer_matrix(A)
    m, n = A.shape
    if A.size == 0 or all(x == 0 for x in A.flat):
        return identity(m), A.copy(), identity(n)

    smith, s, t = smith_normal_decomp(to_sympy(A), domain=ZZ)
    U, D, V = from_sympy(s), from_sympy(smith), from_sympy(t)
    for i in range(min(m, n)):
        if D[i, i] < 0:
            D[i] *= -1
            U[i] *= -1

    _certify_smith(A, U, D, V)
    return U, D, V


def hermite_basis(vectors: Iterable[Sequence[int]], n_cols: int | None = None) -> list[LatticeVector]:
    """
    Row Hermite normal form of the lattice spanned by the given vectors.

    Pivots are the first nonzero entries, positive and in increasing columns;
    entries above each pivot lie in [0, pivot). Zero rows are dropped, so the
    result is a canonical basis of the spanned lattice.
    """
    rows = [to_vector(v) for v in vectors]
    if n_cols is not None and any(len(r) != n_cols for r in rows):
        raise ValueError(f"All vectors must have length {n_cols}.")
    if not rows or all(is_zero(r) for r in rows):
        return []

    # sympy reduces columns with the pivot as the last nonzero entry;
    # reversing coordinates and order turns that into the row form above.
    reversed_columns = sp.Matrix([list(r[::-1]) for r in rows]).T
    W = hermite_normal_form(reversed_columns)
    basis = [tuple(int(x) for x in W[:, j])[::-1] for j in range(W.shape[1])]
    return [b for b in reversed(basis) if not is_zero(b)]
