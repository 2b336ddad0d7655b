import random
from fractions import Fraction

import pytest

from app.core.errors import ContractViolation
from app.exactq import QVector, dot
from app.hullgeom import (
    ContainmentWitness,
    HullService,
    HullVerdict,
    OriginClass,
    SpanningCertificate,
    StrictSeparator,
    WeakSeparator,
)
from app.sampling import DistributionSpec, StreamKey, sample_matrix
from tests.utils.oracles import classify_2d
from tests.utils.utils import random_points, sign_patterns, vec


def _random_instances(count: int, seed: int) -> list[list[QVector]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, 3)
        out.append(random_points(rng, rng.randint(1, 5), d))
    return out


def test_antipodal_pair_witness() -> None:
    result = HullService.contains_origin([vec(1, 0), vec(-1, 0)])
    assert isinstance(result, ContainmentWitness)
    assert result.weights == (Fraction(1, 2), Fraction(1, 2))


def test_common_halfplane_separator(outside_pair: list[QVector]) -> None:
    result = HullService.contains_origin(outside_pair)
    assert isinstance(result, StrictSeparator)
    assert all(dot(p, result.y) < 0 for p in outside_pair)


def test_centroid_witness() -> None:
    result = HullService.contains_origin([vec(1, 0), vec(0, 1), vec(-1, -1)])
    assert isinstance(result, ContainmentWitness)
    assert result.weights == (Fraction(1, 3),) * 3


def test_cross_polytope_interior() -> None:
    points = [vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)]
    assert isinstance(HullService.interior_contains_origin(points), SpanningCertificate)


def test_triangle_interior() -> None:
    points = [vec(1, 0), vec(0, 1), vec(-1, -1)]
    result = HullService.interior_contains_origin(points)
    assert isinstance(result, SpanningCertificate)
    assert len(result.witnesses) == 4


def test_degenerate_segment_not_interior() -> None:
    points = [vec(1, 0), vec(-1, 0)]
    result = HullService.interior_contains_origin(points)
    assert isinstance(result, WeakSeparator)
    assert result.y[0] == 0 and result.y[1] != 0


def test_planar_cross_in_space_is_not_interior() -> None:
    points = [vec(1, 0, 0), vec(-1, 0, 0), vec(0, 1, 0), vec(0, -1, 0)]
    result = HullService.interior_contains_origin(points)
    assert isinstance(result, WeakSeparator)
    assert result.y == (0, 0, 1)
    assert HullService.classify_origin(points).origin_class is OriginClass.BOUNDARY


def test_interior_witnesses_reach_every_axis() -> None:
    points = [vec(2, 1), vec(-1, 3), vec("-1/2", -2), vec(1, -1)]
    result = HullService.interior_contains_origin(points)
    assert isinstance(result, SpanningCertificate)
    targets = [vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)]
    for weights, target in zip(result.witnesses, targets):
        assert all(w >= 0 for w in weights)
        combo = tuple(
            sum((w * p[j] for w, p in zip(weights, points)), Fraction(0)) for j in range(2)
        )
        assert combo == target


def test_dyadic_gaussian_instances(gaussian: DistributionSpec) -> None:
    for trial in range(5):
        points = sample_matrix(gaussian, 20, 10, StreamKey(7, trial)).row_list()
        verdict = HullService.classify_origin(points)
        assert verdict.origin_class is not OriginClass.BOUNDARY
        assert HullService.verify_verdict(points, verdict)


def test_classify_segment(segment: list[QVector]) -> None:
    verdict = HullService.classify_origin(segment)
    assert verdict.origin_class is OriginClass.BOUNDARY
    assert verdict.witness == (Fraction(1, 2), Fraction(1, 2))
    assert verdict.separator is not None
    assert all(dot(p, verdict.separator) <= 0 for p in segment)


def test_classify_square(square: list[QVector]) -> None:
    assert HullService.classify_origin(square).origin_class is OriginClass.INTERIOR


def test_classify_outside(outside_pair: list[QVector]) -> None:
    verdict = HullService.classify_origin(outside_pair)
    assert verdict.origin_class is OriginClass.OUTSIDE
    assert not verdict.origin_class.contains


def test_classify_zero_point() -> None:
    assert HullService.classify_origin([vec(0, 0)]).origin_class is OriginClass.BOUNDARY


def test_classify_one_dimensional() -> None:
    assert HullService.classify_origin([vec(1), vec(-1)]).origin_class is OriginClass.INTERIOR
    assert HullService.classify_origin([vec(1), vec(2)]).origin_class is OriginClass.OUTSIDE


def test_mixed_dimensions_rejected() -> None:
    with pytest.raises(ContractViolation):
        HullService.classify_origin([vec(1, 0), vec(1)])


def test_affine_hull_dim() -> None:
    assert HullService.affine_hull_dim([vec(0, 0), vec(1, 0), vec(0, 1)]) == 2
    assert HullService.affine_hull_dim([vec(1, 1), vec(2, 2)]) == 1
    assert HullService.affine_hull_dim([vec(3, 4)]) == 0


def test_dimension_deficient() -> None:
    assert HullService.dimension_deficient([vec(1, 1), vec(2, 2)])
    assert not HullService.dimension_deficient([vec(1, 0), vec(0, 1)])


def test_verify_verdict(
    square: list[QVector], segment: list[QVector], outside_pair: list[QVector]
) -> None:
    assert HullService.verify_verdict(square, HullService.classify_origin(square))
    assert HullService.verify_verdict(outside_pair, HullService.classify_origin(outside_pair))
    real = HullService.classify_origin(segment)
    forged = HullVerdict(
        origin_class=OriginClass.INTERIOR,
        witness=real.witness,
        spanning_witnesses=((Fraction(1), Fraction(0)),) * 4,
    )
    assert not HullService.verify_verdict(segment, forged)


def test_verdict_json_uses_class_key(segment: list[QVector]) -> None:
    payload = HullService.classify_origin(segment).to_json_dict()
    assert payload["class"] == "Boundary"
    assert payload["witness"] == ["1/2", "1/2"]
    assert "spanning_witnesses" not in payload


def test_separator_and_witness_never_both_verify() -> None:
    for points in _random_instances(200, seed=1):
        verdict = HullService.classify_origin(points)
        if verdict.origin_class is OriginClass.OUTSIDE:
            continue
        assert verdict.witness is not None
        for y in [*points, *(tuple(-v for v in p) for p in points)]:
            assert not all(dot(p, y) < 0 for p in points)


def test_negation_symmetry() -> None:
    for points in _random_instances(300, seed=2):
        negated = [tuple(-v for v in p) for p in points]
        assert (
            HullService.classify_origin(points).origin_class
            == HullService.classify_origin(negated).origin_class
        )


def test_permutation_duplication_and_scaling() -> None:
    rng = random.Random(3)
    for points in _random_instances(150, seed=3):
        expected = HullService.classify_origin(points).origin_class
        shuffled = list(points)
        rng.shuffle(shuffled)
        assert HullService.classify_origin(shuffled).origin_class == expected
        doubled = [*points, points[rng.randrange(len(points))]]
        assert HullService.classify_origin(doubled).origin_class == expected
        factor = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        scaled = [tuple(factor * v for v in p) for p in points]
        assert HullService.classify_origin(scaled).origin_class == expected


def test_adding_points_keeps_containment() -> None:
    rng = random.Random(4)
    for points in _random_instances(150, seed=4):
        if not HullService.classify_origin(points).origin_class.contains:
            continue
        extra = random_points(rng, 1, len(points[0]))
        assert HullService.classify_origin([*points, *extra]).origin_class.contains


def test_interior_implies_full_dimension() -> None:
    for points in _random_instances(200, seed=5):
        if HullService.classify_origin(points).origin_class is OriginClass.INTERIOR:
            assert not HullService.dimension_deficient(points)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_planar_oracle(n: int) -> None:
    for points in sign_patterns(n, 2):
        assert HullService.classify_origin(points).origin_class.value == classify_2d(points)


def test_agrees_with_planar_oracle_on_rationals() -> None:
    rng = random.Random(6)
    for _ in range(300):
        points = random_points(rng, rng.randint(1, 5), 2)
        assert HullService.classify_origin(points).origin_class.value == classify_2d(points)


def test_parse_points() -> None:
    text = "# a segment\n1/2, -3/4\n\n-1/2 3/4\n"
    assert HullService.parse_points(text) == [
        (Fraction(1, 2), Fraction(-3, 4)),
        (Fraction(-1, 2), Fraction(3, 4)),
    ]


def test_parse_points_errors() -> None:
    with pytest.raises(ContractViolation):
        HullService.parse_points("1 2\n3\n")
    with pytest.raises(ContractViolation):
        HullService.parse_points("0.5 1\n")
    assert HullService.parse_points("0.5 1\n", dyadic_bits=8) == [(Fraction(1, 2), Fraction(1))]
