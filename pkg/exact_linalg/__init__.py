from exact_linalg.lattice import (
    LatticeVector,
    as_integer_matrix,
    determinant,
    dot,
    from_sympy,
    identity,
    is_zero,
    lattice_matrix,
    primitive,
    rank,
    to_sympy,
    to_vector,
)
from exact_linalg.normal_forms import hermite_basis, smith_normal_form
from exact_linalg.solvers import (
    CokernelData,
    cokernel,
    in_image,
    kernel_basis,
    solve_integer,
    solve_rational,
)

__all__ = [
    "as_integer_matrix",
    "LatticeVector",
    "CokernelData",
    "cokernel",
    "determinant",
    "dot",
    "from_sympy",
    "hermite_basis",
    "identity",
    "in_image",
    "is_zero",
    "kernel_basis",
    "lattice_matrix",
    "primitive",
    "rank",
    "smith_normal_form",
    "solve_integer",
    "solve_rational",
    "to_sympy",
    "to_vector",
]
