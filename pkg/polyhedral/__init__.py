from polyhedral.cone import (
    Cone,
    Face,
    dual_cone,
    face_lattice,
    hilbert_basis,
    is_simplicial,
    relative_interior_point,
)
from polyhedral.double_description import double_description
from polyhedral.semigroup import interior_ideal_generators, semigroup_generators, triangulate
from polyhedral.localization import FaceLocalization, localize_at_face, positive_off_face

__all__ = [
    "Cone",
    "Face",
    "FaceLocalization",
    "double_description",
    "dual_cone",
    "face_lattice",
    "hilbert_basis",
    "interior_ideal_generators",
    "is_simplicial",
    "localize_at_face",
    "positive_off_face",
    "relative_interior_point",
    "semigroup_generators",
    "triangulate",
]
