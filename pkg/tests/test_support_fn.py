import itertools
from fractions import Fraction
from functools import cmp_to_key

import numpy as np
import pytest

import support_fn.support_lattice as support_lattice
from cli.corpus import corpus_names, resolve_fan
from config.errors import ErrorCode, ToriqError
from exact_linalg import dot, in_image, kernel_basis, primitive, rank, solve_rational
from fan_model import Fan
from support_fn import PicClass, compare_with_cox, compute_SF, degree, evaluate, iota, quotient_group_data


@pytest.fixture
def p2_lattice():
    return compute_SF(Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]], name="p2"))


@pytest.fixture
def weighted_lattice():
    """P(1,1,2): the cone spanned by (1,0) and (-1,-2) has index two."""
    return compute_SF(Fan([(1, 0), (0, 1), (-1, -2)], [[0, 1], [1, 2], [0, 2]], name="p112"))


def _cube_rays(first=(1, 1, 1)):
    rays = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    rays[0] = first
    return rays


def _cube_fan(first=(1, 1, 1)):
    rays = _cube_rays()
    cones = []
    for axis in range(3):
        for sign in (1, -1):
            cones.append([i for i, r in enumerate(rays) if r[axis] == sign])
    return Fan(_cube_rays(first), cones, name="cube")


def test_p2_support_lattice(p2_lattice):
    """SF(P2) has rank 3 and degree given by the sum of ray values."""
    # 1. Arrange
    lattice = p2_lattice

    # 2. Act
    ranks = quotient_group_data(lattice)
    hyperplane = lattice.from_ray_values((1, 0, 0))

    # 3. Assert
    assert ranks == (3, 2, 1)
    assert lattice.pic.projection.tolist() == [[1, 1, 1]]
    assert degree(lattice, hyperplane) == PicClass((1,))
    assert compare_with_cox(lattice).is_isomorphism


def test_iota_is_linear_and_has_degree_zero(p2_lattice):
    """ι(m) has linear ray values and degree zero."""
    h = iota(p2_lattice, (1, 2))
    assert h.ray_values == (1, 2, -3)
    assert degree(p2_lattice, h).is_zero
    assert p2_lattice.preimage(h.coordinates) == (1, 2)
    assert p2_lattice.preimage(p2_lattice.from_ray_values((1, 0, 0)).coordinates) is None


def test_evaluate_on_each_cone(p2_lattice):
    """Evaluation uses the character of the containing cone."""
    h = p2_lattice.from_ray_values((1, 0, 0))
    assert evaluate(p2_lattice, h, (2, 1)) == 2
    assert evaluate(p2_lattice, h, (-2, -1)) == 0
    assert evaluate(p2_lattice, h, (0, 0)) == 0
    assert h.characters[(0, 1)] == (Fraction(1), Fraction(0))


def test_linearly_equivalent_rays_share_a_degree():
    """Opposite rays of P1 x P1 have the same degree."""
    lattice = compute_SF(Fan([(1, 0), (-1, 0), (0, 1), (0, -1)], [[0, 2], [0, 3], [1, 2], [1, 3]], name="p1xp1"))
    degrees = [lattice.degree(lattice.from_ray_values(tuple(int(i == j) for j in range(4)))) for i in range(4)]

    assert lattice.pic_rank == 2
    assert degrees[0] == degrees[1]
    assert degrees[2] == degrees[3]
    assert degrees[0] != degrees[2]


def test_singular_cone_forces_even_values(weighted_lattice):
    """On P(1,1,2) the singular cone only allows even values on its last ray."""
    comparison = compare_with_cox(weighted_lattice)
    assert comparison.sf_rank == 3
    assert comparison.index == 2
    assert not comparison.is_isomorphism

    with pytest.raises(ToriqError) as excinfo:
        weighted_lattice.from_ray_values((0, 0, 1))
    assert excinfo.value.code == ErrorCode.NON_INTEGRAL_RESTRICTION

    h = weighted_lattice.from_ray_values((0, 0, 2))
    assert evaluate(weighted_lattice, h, (0, -1)) == 1


def test_degree_lift_reaches_every_class(weighted_lattice):
    """Every Pic class lifts to a support function of that degree."""
    for k in range(-2, 3):
        alpha = PicClass((k,))
        coordinates = weighted_lattice.degree_lift(alpha)
        assert weighted_lattice.degree(coordinates) == alpha


def test_cube_fan_has_picard_rank_one():
    """The cube fan has eight rays but Picard rank one."""
    lattice = compute_SF(_cube_fan())
    assert lattice.rank == 4
    assert lattice.pic_rank == 1


def test_perturbed_cube_has_trivial_picard_group():
    """A perturbed cube has only linear support functions."""
    lattice = compute_SF(_cube_fan(first=(1, 2, 3)))
    assert lattice.rank == 3
    assert lattice.pic_rank == 0
    assert lattice.degree(lattice.zero()) == PicClass(())


def test_evaluate_outside_support():
    """Evaluating off the support is an error."""
    lattice = compute_SF(Fan([(1, 0), (0, 1)], [[0, 1]], name="quadrant"))
    assert lattice.pic_rank == 0
    with pytest.raises(ToriqError, match="OUTSIDE_SUPPORT"):
        lattice.evaluate(lattice.zero(), (-1, 0))


@pytest.mark.parametrize(
    "rays, cones, code",
    [
        ([(1, 0), (1, 2)], [[0], [1]], ErrorCode.TORSION_PIC),
        ([(1, 0), (-1, 0)], [[0], [1]], ErrorCode.SPAN_DEFICIENT),
        ([(1, 0), (0, 1), (1, 1), (1, -1)], [[0, 1], [2, 3]], ErrorCode.INVALID_FAN),
    ],
)
def test_compute_sf_rejects(rays, cones, code):
    """Invalid, span-deficient and torsion fans are refused."""
    with pytest.raises(ToriqError) as excinfo:
        compute_SF(Fan(rays, cones))
    assert excinfo.value.code == code


def test_torsion_details_are_reported(mocker):
    """Torsion invariants are attached to the error and logged."""
    # 1. Arrange
    spy = mocker.spy(support_lattice.logger, "info")

    # 2. Act
    with pytest.raises(ToriqError) as excinfo:
        compute_SF(Fan([(1, 0), (1, 2)], [[0], [1]]))

    # 3. Assert
    assert excinfo.value.details == {"torsion_invariants": [2]}
    spy.assert_called_once()


def _counterclockwise(u, v):
    """Orders primitive plane vectors by angle from the positive x-axis."""
    def half(w):
        return 0 if w[1] > 0 or (w[1] == 0 and w[0] > 0) else 1

    if half(u) != half(v):
        return half(u) - half(v)
    return -(u[0] * v[1] - u[1] * v[0])


@pytest.fixture
def random_complete_plane_fans():
    """Complete simplicial fans in rank 2 with ray entries in [-4, 4]."""
    rng = np.random.default_rng(5)
    fans = []
    while len(fans) < 50:
        draws = rng.integers(-4, 5, size=(int(rng.integers(3, 6)), 2))
        candidates = {primitive(tuple(int(x) for x in row)) for row in draws}
        rays = sorted((r for r in candidates if any(r)), key=cmp_to_key(_counterclockwise))
        pairs = [(i, (i + 1) % len(rays)) for i in range(len(rays))]
        if len(rays) < 3 or any(rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0] <= 0 for i, j in pairs):
            continue
        fans.append(Fan(rays, [list(p) for p in pairs], name=f"random_{len(fans)}"))
    return fans


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_fan_sequence_is_exact(name):
    """0 -> M -> SF -> Pic -> 0 is exact for every bundled fan."""
    # 1. Arrange
    lattice = compute_SF(resolve_fan(name).to_fan())
    projection = lattice.pic.projection

    # 2. Act
    kernel = kernel_basis(projection) if lattice.pic_rank else [
        tuple(int(i == j) for j in range(lattice.rank)) for i in range(lattice.rank)
    ]

    # 3. Assert
    assert rank(lattice.iota_matrix) == lattice.lattice_rank
    if lattice.pic_rank:
        assert (projection.dot(lattice.iota_matrix) == 0).all()
    assert len(kernel) == lattice.lattice_rank
    assert all(in_image(lattice.iota_matrix, k) for k in kernel)
    assert lattice.rank == lattice.lattice_rank + lattice.pic_rank


def test_compute_sf_matches_character_oracle(random_complete_plane_fans):
    """Ray values lie in SF exactly when every cone's character is integral."""
    for fan in random_complete_plane_fans:
        # 1. Arrange
        lattice = compute_SF(fan)
        n = len(fan.ray_ids)

        def integral_on_every_cone(values):
            for key in fan.maximal_keys:
                rows = [fan.ray(i) for i in key]
                m = solve_rational(np.array(rows, dtype=object), [values[fan.position(i)] for i in key])
                if any(x.denominator != 1 for x in m):
                    return False
            return True

        # 2. Act
        members = {
            values: in_image(lattice.ray_matrix, values) for values in itertools.product((0, 1), repeat=n)
        }

        # 3. Assert
        assert lattice.rank == n
        assert lattice.pic_rank == n - 2
        for i in range(lattice.rank):
            h = lattice.element(tuple(int(i == j) for j in range(lattice.rank)))
            assert all(x.denominator == 1 for m in h.characters.values() for x in m)
            for key, m in h.characters.items():
                assert all(dot(m, fan.ray(r)) == h.ray_values[fan.position(r)] for r in key)
        for values, member in members.items():
            assert member == integral_on_every_cone(values), (fan.name, values)


def test_degree_lift_rejects_classes_of_the_wrong_length(p2_lattice):
    """The Pic class must have one coordinate per Pic generator."""
    with pytest.raises(ToriqError) as excinfo:
        p2_lattice.degree_lift(PicClass((1, 1)))
    assert excinfo.value.code == ErrorCode.PARSE_ERROR
