"""
Exact integer vectors and matrices.

Vectors are plain tuples of Python ints. Matrices are numpy arrays with
dtype=object so every entry stays an arbitrary-precision int.
"""

from math import gcd
from typing import Iterable, Sequence

import numpy as np
import sympy as sp

LatticeVector = tuple[int, ...]


def to_vector(values: Iterable) -> LatticeVector:
    """Converts any iterable of integral values (numpy ints included) to a LatticeVector."""
    return tuple(int(v) for v in values)


def is_zero(v: Sequence[int]) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence[int]) -> LatticeVector:
    """Divides v by the gcd of its entries. The zero vector is returned unchanged."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g in (0, 1):
        return to_vector(v)
    return tuple(int(x) // g for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def lattice_matrix(rows: Iterable[Sequence[int]], n_cols: int | None = None) -> np.ndarray:
    """
    Builds an object-dtype integer matrix from rows.

    Args:
        rows: The matrix rows.
        n_cols: Column count, required when rows is empty.

    Returns:
        A 2-D numpy array of Python ints.
    """
    rows = [to_vector(r) for r in rows]
    if not rows:
        if n_cols is None:
            raise ValueError("n_cols is required to build a matrix with no rows.")
        return np.zeros((0, n_cols), dtype=object)
    width = len(rows[0])
    if n_cols is not None and width != n_cols:
        raise ValueError(f"Rows have length {width}, expected {n_cols}.")
    if any(len(r) != width for r in rows):
        raise ValueError("All rows must have the same length.")
    matrix = np.zeros((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            matrix[i, j] = x
    return matrix


def identity(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def to_sympy(A) -> sp.Matrix:
    """Copies an integer matrix into a sympy Matrix (domain ZZ), keeping empty shapes."""
    arr = np.asarray(A, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {arr.shape}.")
    return sp.Matrix(arr.shape[0], arr.shape[1], [int(x) for x in arr.flat])


def from_sympy(M: sp.Matrix) -> np.ndarray:
    out = np.zeros(M.shape, dtype=object)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            out[i, j] = int(M[i, j])
    return out


def rank(A) -> int:
    M = to_sympy(A)
    if M.rows == 0 or M.cols == 0:
        return 0
    return int(M.rank())


def determinant(A) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    M = to_sympy(A)
    if M.rows != M.cols:
        raise ValueError("determinant requires a square matrix.")
    if M.rows == 0:
        return 1
    return int(M.det(method="bareiss"))


def as_integer_matrix(A) -> np.ndarray:
    """Copies A into an object-dtype matrix of Python ints, keeping its shape."""
    arr = np.asarray(A, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {arr.shape}.")
    out = np.zeros(arr.shape, dtype=object)
    for index in np.ndindex(arr.shape):
        out[index] = int(arr[index])
    return out
