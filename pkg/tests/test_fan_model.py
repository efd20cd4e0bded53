import pytest

from config.errors import ErrorCode, ToriqError
from fan_model import Fan, cone_containing, star_subfan, validate_fan


@pytest.fixture
def p2_fan():
    return Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]], name="p2")


@pytest.fixture
def square_cone_fan():
    return Fan([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]], name="square")


def test_p2_fan_is_valid_and_complete(p2_fan):
    """P2 is a valid complete smooth fan with seven cones."""
    report = validate_fan(p2_fan)
    assert report.valid
    assert report.violations == []
    assert p2_fan.is_complete() and p2_fan.is_smooth()
    assert len(p2_fan.cones) == 7
    assert () in p2_fan.cones


def test_bad_intersection_is_reported():
    """Cones meeting outside a common face are flagged."""
    # 1. Arrange
    fan = Fan([(1, 0), (0, 1), (1, 1), (1, -1)], [[0, 1], [2, 3]], name="overlap")

    # 2. Act
    report = validate_fan(fan)

    # 3. Assert
    assert not report.valid
    assert ErrorCode.BAD_INTERSECTION in report.kinds()
    assert report.to_frame().loc[0, "kind"] == "BAD_INTERSECTION"


def test_span_deficiency_is_only_a_warning():
    """Rays that do not span are reported without invalidating the fan."""
    report = validate_fan(Fan([(1, 0)], [[0]]))
    assert report.valid
    assert report.kinds() == {ErrorCode.SPAN_DEFICIENT}


def test_non_pointed_and_missing_face():
    """Non-pointed cones and non-face generators are reported."""
    report = validate_fan(Fan([(1, 0), (-1, 0), (0, 1)], [[0, 1, 2]]))
    assert ErrorCode.NOT_POINTED in report.kinds()

    report = validate_fan(Fan([(1, 0), (1, 1), (0, 1)], [[0, 1, 2]]))
    assert ErrorCode.MISSING_FACE in report.kinds()


def test_unused_ray_is_an_error():
    """A ray outside every cone invalidates the fan."""
    report = validate_fan(Fan([(1, 0), (0, 1), (-1, 0)], [[0, 1]]))
    assert not report.valid
    assert ErrorCode.UNUSED_RAY in report.kinds()


def test_unknown_ray_in_cone():
    """Cones may only refer to declared rays."""
    with pytest.raises(ToriqError, match="UNKNOWN_RAY"):
        Fan([(1, 0)], [[0, 3]])


def test_non_primitive_rays_are_normalized(caplog):
    """Rays are made primitive with a warning."""
    fan = Fan([(2, 0), (0, 3)], [[0, 1]])
    assert fan.rays == [(1, 0), (0, 1)]
    assert "not primitive" in caplog.text


def test_star_subfan(p2_fan):
    """The star of a ray keeps the cones containing it."""
    # 1. Act
    star = star_subfan(p2_fan, 0)

    # 2. Assert
    assert sorted(star.maximal_keys) == [(0, 1), (0, 2)]
    assert star.ray_ids == (0, 1, 2)
    assert validate_fan(star).valid
    assert all(star.ray(i) == p2_fan.ray(i) for i in star.ray_ids)


def test_star_subfan_keeps_parent_ids():
    """The star keeps the parent's ray ids."""
    p1 = Fan([(1,), (-1,)], [[0], [1]])
    star = star_subfan(p1, 0)
    assert star.ray_ids == (0,)
    assert set(star.cones) == {(), (0,)}
    with pytest.raises(ToriqError, match="UNKNOWN_RAY"):
        star_subfan(p1, 5)


def test_star_of_single_cone_is_whole_fan(square_cone_fan):
    """The star of any ray of a single cone is the whole fan."""
    star = star_subfan(square_cone_fan, 2)
    assert star.maximal_keys == square_cone_fan.maximal_keys
    assert len(star.cones) == 10


def test_cone_containing(p2_fan):
    """Points map to the smallest cone containing them."""
    assert cone_containing(p2_fan, (2, 1)) == (0, 1)
    assert cone_containing(p2_fan, (0, 0)) == ()
    assert cone_containing(p2_fan, (0, 5)) == (1,)

    half = Fan([(1, 0), (0, 1), (-1, 0)], [[0, 1], [1, 2]])
    assert cone_containing(half, (0, -1)) is None


def test_cone_containing_respects_face_relation(p2_fan):
    """Each ray lies in a face of every cone that contains it."""
    for key, cone in p2_fan.cones.items():
        for ray in cone.rays:
            result = cone_containing(p2_fan, ray)
            assert p2_fan.cones[result].dim <= 1
            assert set(result) <= set(key)


def test_face_poset_and_completeness(square_cone_fan):
    """The square cone is neither complete nor simplicial."""
    pairs = square_cone_fan.face_poset()
    assert ((), (0, 1, 2, 3)) in pairs
    assert not square_cone_fan.is_complete()
    assert not square_cone_fan.is_simplicial()
