from support_fn.support_lattice import (
    CoxComparison,
    PicClass,
    SupportFunction,
    SupportLattice,
    compare_with_cox,
    compute_SF,
    degree,
    evaluate,
    iota,
    is_effective,
    quotient_group_data,
    ray_values,
)

__all__ = [
    "CoxComparison",
    "PicClass",
    "SupportFunction",
    "SupportLattice",
    "compare_with_cox",
    "compute_SF",
    "degree",
    "evaluate",
    "iota",
    "is_effective",
    "quotient_group_data",
    "ray_values",
]
