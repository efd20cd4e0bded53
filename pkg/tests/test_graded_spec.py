import itertools

import numpy as np
import pytest

from cli.corpus import resolve_fan
from cox_quotient import build_quotient
from fan_model import Fan
from graded_spec import (
    NagspecCertificate,
    chart_contraction,
    charts_cover,
    check_intersection_law,
    check_primality,
    degree_zero_generators,
    direct_sum_sections_on_chart,
    global_sections,
    homunit_factorize,
    monomial_primes,
    ring_generators,
    twisted_sections_on_chart,
    verify_all,
    verify_face_localization,
    verify_nagspec,
)
from graded_spec.verification import HOMUNIT_SAMPLES
from support_fn import PicClass, compute_SF


@pytest.fixture(scope="module")
def p2():
    return build_quotient(compute_SF(Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]], name="p2")))


@pytest.fixture(scope="module")
def p1xp1():
    fan = Fan([(1, 0), (-1, 0), (0, 1), (0, -1)], [[0, 2], [0, 3], [1, 2], [1, 3]], name="p1xp1")
    return build_quotient(compute_SF(fan))


@pytest.fixture(scope="module")
def square():
    fan = Fan([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]], name="square")
    return build_quotient(compute_SF(fan))


def _fiber_oracle(qp, alpha, box):
    """Counts exponents of Č in [0, box]^rank of the given degree by brute force."""
    count = 0
    for x in itertools.product(range(box + 1), repeat=qp.rank):
        if qp.in_check(x) and qp.lattice.degree(x) == alpha:
            count += 1
    return count


def test_p2_ring_generators(p2):
    """Three ring generators, all of degree one."""
    generators = ring_generators(p2)
    assert len(generators) == 3
    assert {g.degree for g in generators} == {PicClass((1,))}


def test_p1xp1_ring_generators_split_two_and_two(p1xp1):
    """The four variables fall into two degree classes of two."""
    degrees = [g.degree for g in ring_generators(p1xp1)]
    assert len(degrees) == 4
    assert sorted(degrees.count(d) for d in set(degrees)) == [2, 2]


def test_square_cone_ring_is_in_degree_zero(square):
    """With trivial Pic every generator has degree zero."""
    generators = ring_generators(square)
    assert len(generators) >= 4
    assert all(g.degree.is_zero for g in generators)


@pytest.mark.parametrize("d, expected", [(-1, 0), (0, 1), (1, 3), (2, 6), (3, 10), (4, 15)])
def test_p2_sections(p2, d, expected):
    """Sections of O(d) count binomial(d + 2, 2) monomials."""
    sections = global_sections(p2, PicClass((d,)))
    assert not sections.is_infinite
    assert len(sections) == expected
    if d >= 0:
        assert len(sections) == _fiber_oracle(p2, PicClass((d,)), d)


@pytest.mark.parametrize("a, b", list(itertools.product(range(4), repeat=2)))
def test_p1xp1_sections(p1xp1, a, b):
    """Bidegree (a, b) has (a + 1)(b + 1) sections."""
    # 1. Arrange
    by_degree = {}
    for g in ring_generators(p1xp1):
        by_degree.setdefault(g.degree, g)
    dx, dy = sorted(by_degree, key=lambda c: c.coordinates)
    alpha = dx.scale(a) + dy.scale(b)

    # 2. Act
    sections = global_sections(p1xp1, alpha)

    # 3. Assert
    assert len(sections) == _fiber_oracle(p1xp1, alpha, max(a, b))
    assert len(sections) == (a + 1) * (b + 1)


def test_affine_sections_are_infinite(square):
    """Degree zero on an affine cone is infinite, with a witness in Č."""
    sections = global_sections(square, PicClass(()))
    assert sections.is_infinite
    assert square.in_check(sections.witness) and any(sections.witness)


def test_monomial_primes_of_p2(p2):
    """Eight monomial primes, seven relevant ones matching the cones."""
    # 1. Act
    primes = monomial_primes(p2)
    relevant = [p for p in primes if not p.contains_irrelevant]

    # 2. Assert
    assert len(primes) == 8
    assert [p.ray_ids for p in primes if p.contains_irrelevant] == [(0, 1, 2)]
    assert len(relevant) == 7
    assert {p.cone for p in relevant} == set(p2.fan.cones)
    assert check_intersection_law(p2, primes)
    assert check_primality(p2, primes, sample_size=50)
    assert charts_cover(p2, primes)


def test_chart_contraction_is_an_order_isomorphism(p1xp1):
    """Faces of each chart map onto the cones below it."""
    for key in p1xp1.fan.maximal_keys:
        contraction = chart_contraction(p1xp1, key)
        assert contraction.passed
        assert sorted(contraction.mapping.values()) == sorted(
            t for t in p1xp1.fan.cones if set(t) <= set(key)
        )


def test_nagspec_certificate(p2):
    """Both directions of the chart identification succeed on P2."""
    certificate = verify_nagspec(p2, (0, 1))
    assert certificate.passed
    assert max(certificate.forward.values()) <= 2
    assert all(m is not None for m in certificate.backward.values())


def test_nagspec_on_affine_cone_is_the_identity(square):
    """The only chart of an affine cone needs no twisting."""
    certificate = verify_nagspec(square, (0, 1, 2, 3))
    assert set(certificate.forward.values()) == {0}


def test_homunit_factorization(p2):
    """Monomials split into a character times a unit of the chart."""
    # 1. Arrange
    lattice = p2.lattice

    # 2. Act
    general = homunit_factorize(p2, (0, 1), (2, 1, 0))
    vanishing = homunit_factorize(p2, (0, 1), (0, 0, 5))
    linear = homunit_factorize(p2, (0, 1), lattice.iota_coordinates((1, 2)))

    # 3. Assert
    assert general.character == (2, 1)
    assert general.unit == (0, 0, 3)
    assert vanishing.character == (0, 0) and vanishing.unit == (0, 0, 5)
    assert linear.character == (1, 2) and linear.unit == (0, 0, 0)


def test_homunit_on_random_localized_monomials(p1xp1):
    """Random localized monomials recompose from their factorization."""
    rng = np.random.default_rng(3)
    key = (0, 2)
    h_sigma = p1xp1.h_dist[key]
    for _ in range(HOMUNIT_SAMPLES):
        x = tuple(int(v) for v in rng.integers(0, 4, size=4))
        x = tuple(a - 2 * b for a, b in zip(x, h_sigma))
        factorization = homunit_factorize(p1xp1, key, x)
        recomposed = tuple(a + b for a, b in zip(p1xp1.lattice.iota_coordinates(factorization.character), factorization.unit))
        assert recomposed == x
        values = dict(zip(p1xp1.fan.ray_ids, p1xp1.lattice.values_of(factorization.unit)))
        assert values[0] == values[2] == 0


def test_homunit_rejects_exponents_outside_the_localization(p2):
    """Exponents with a pole along the chart are refused."""
    with pytest.raises(ValueError, match="localization"):
        homunit_factorize(p2, (0, 1), (-1, 0, 0))


def test_chart_trivialization_of_p2(p2):
    """Each chart of O(1) and O(2) has a single generator."""
    chart = twisted_sections_on_chart(p2, PicClass((1,)), (1, 2))
    trivial = twisted_sections_on_chart(p2, PicClass((0,)), (1, 2))

    assert chart.generator == (1, 0, 0)
    assert chart.passed and all(chart.stalks.values())
    assert trivial.generator == (0, 0, 0)

    summands = direct_sum_sections_on_chart(p2, [PicClass((1,)), PicClass((2,))], (0, 1))
    assert [s.generator for s in summands] == [(0, 0, 1), (0, 0, 2)]


def test_face_localization(p2):
    """Localizing at a ray of a chart matches the face's chart."""
    check = verify_face_localization(p2, (0,), (0, 1))
    assert check.passed
    assert check.localization.character_positive_off_face


def test_verify_all_passes_on_p2(p2):
    """Every certificate in the suite passes on P2."""
    suite = verify_all(p2)
    frame = suite.to_frame()

    assert suite.passed, frame[~frame["passed"]]
    assert {"nagspec", "homunit", "prime_bijection", "chart_overlap"} <= set(frame["name"])
    assert suite.summary()["passed"].sum() == len(frame)


def test_verify_all_passes_on_affine_cone(square):
    """The suite also passes when Pic is trivial."""
    suite = verify_all(square)
    assert suite.passed, suite.to_frame()[~suite.to_frame()["passed"]]


def test_nagspec_backward_direction_on_every_p1xp1_chart(p1xp1):
    """Degree-zero generators of each chart pull back to characters."""
    for key in p1xp1.fan.maximal_keys:
        # 1. Arrange
        generators = degree_zero_generators(p1xp1, key)

        # 2. Act
        certificate = verify_nagspec(p1xp1, key)

        # 3. Assert
        assert generators
        assert set(certificate.backward) == set(generators)
        assert certificate.passed
        for x, m in certificate.backward.items():
            assert p1xp1.lattice.iota_coordinates(m) == x


def test_nagspec_with_no_backward_generators_fails():
    """A certificate with nothing checked backward does not pass."""
    assert not NagspecCertificate(cone=(0, 1), forward={(1, 0): 0}, backward={}).passed
    assert NagspecCertificate(cone=(0,), forward={(): 0}, backward={}, trivial=True).passed


@pytest.mark.parametrize(
    "name", ["p1", "p2", "p1xp1", "hirzebruch_2", "blowup_p2", "cube_fan", "affine_square_cone"]
)
def test_verify_all_passes_on_corpus(name):
    """The whole certificate suite passes on every fan with a quotient."""
    # 1. Arrange
    qp = build_quotient(compute_SF(resolve_fan(name).to_fan()))

    # 2. Act
    suite = verify_all(qp)

    # 3. Assert
    frame = suite.to_frame()
    assert suite.passed, frame[~frame["passed"]]
    assert "nagspec" in set(frame["name"])
