from helpers import *

import numpy as np
import pytest


def generated(ring: TruncRing, *elements: TruncElement) -> TruncIdeal:
    return TruncIdeal.generated_by(ring, list(elements))


def x1_power(ring: TruncRing, k: int) -> TruncElement:
    return TruncElement.monomial(ring, 0, (k,))


def test_translated_presentation():
    ring = TruncRing(1, 2, 3, PRIME)
    ideal = DechargeableIdeal.translated(ring, 2)
    ideal.validate()
    assert ideal.height == 2
    assert ideal.ideal().equals(translated_ideal(Staircase.big_point(1, 2), 2, 3, PRIME))


def test_colon_without_t():
    # q = 1: I = (x1^2) in k[x1]/x1^3
    ring = TruncRing(1, 1, 3, PRIME)
    ideal = DechargeableIdeal.translated(ring, 2)
    colon = generated(ring, *dechargeable_colon(ideal))
    assert colon.equals(generated(ring, x1_power(ring, 1)))


def test_colon_when_q_at_most_height():
    ring = TruncRing(1, 2, 4, PRIME)
    ideal = DechargeableIdeal.translated(ring, 3)
    expected = generated(ring,
                         x1_power(ring, 3),
                         TruncElement.truncated(ring, {(0, (2,)): 1, (1, (1,)): -3}))
    assert generated(ring, *dechargeable_colon(ideal)).equals(expected)
    assert expected.equals(colon_x1(ideal.ideal()))


def test_colon_when_q_exceeds_height():
    ring = TruncRing(1, 2, 3, PRIME)
    ideal = DechargeableIdeal.translated(ring, 1)
    t = TruncElement.monomial(ring, 1, (0,))
    expected = generated(ring, x1_power(ring, 2), translated_power(ring, 1), t)
    assert generated(ring, *dechargeable_colon(ideal)).equals(expected)
    assert expected.equals(colon_x1(ideal.ideal()))


def test_restrict_colon_drops_height():
    ideal = DechargeableIdeal.translated(TruncRing(1, 2, 3, PRIME), 2)
    restricted = dechargeable_restrict_colon(ideal, 1, 2)
    assert restricted.height == 1
    assert restricted.ideal().equals(generated(restricted.ring, x1_power(restricted.ring, 1)))
    assert restricted.ideal().equals(restrict(colon_x1(ideal.ideal()), 1, 2))


def test_restrict_colon_keeps_height():
    ideal = DechargeableIdeal.translated(TruncRing(1, 2, 3, PRIME), 1)
    restricted = dechargeable_restrict_colon(ideal, 1, 2)
    assert restricted.height == 1
    assert restricted.ideal().equals(restrict(colon_x1(ideal.ideal()), 1, 2))


def test_restrict_colon_needs_smaller_ring():
    ideal = DechargeableIdeal.translated(TruncRing(1, 2, 3, PRIME), 1)
    with pytest.raises(BadTruncation):
        dechargeable_restrict_colon(ideal, 2, 2)


def test_heights_along_a_chain():
    ideal = DechargeableIdeal.translated(TruncRing(1, 4, 6, PRIME), 3)
    heights = []
    for q, s in [(3, 5), (2, 4), (1, 3)]:
        ideal = dechargeable_restrict_colon(ideal, q, s)
        heights.append(ideal.height)
    # the first move has q > H and keeps the height
    assert heights == [3, 2, 1]
    assert ideal.ideal().equals(translated_ideal(Staircase.big_point(1, 1), 1, 3, PRIME))


def test_height_zero_is_unit():
    ideal = DechargeableIdeal.translated(TruncRing(1, 2, 3, PRIME), 0)
    assert ideal.ideal().equals(TruncIdeal.unit(ideal.ring))


def test_invalid_presentations():
    ring = TruncRing(1, 3, 4, PRIME)
    with pytest.raises(NotDechargeable):
        # beta1 must vanish when q exceeds the height
        DechargeableIdeal(ring, 2, (1,)).validate()
    with pytest.raises(NotDechargeable):
        DechargeableIdeal(ring, 2, (0, 1), ()).validate()
    with pytest.raises(NotDechargeable):
        DechargeableIdeal(TruncRing(2, 3, 4, PRIME), 2, (0,)).validate()
    with pytest.raises(NotDechargeable):
        # t (x1 - t)^2 / x1 has the term t^2 x1^0, below the required x1^1
        DechargeableIdeal(ring, 2, (0, 1), (1,)).validate()


def test_closed_form_matches_colon_on_random_ideals():
    rng = np.random.default_rng(1)
    branches = set()
    for _ in range(100):
        ideal = random_dechargeable(rng, PRIME)
        ring = ideal.ring
        branches.add(ring.q <= ideal.height)
        closed = generated(ring, *dechargeable_colon(ideal))
        assert closed.equals(colon_x1(ideal.ideal()))
        brute = brute_colon(ideal.ideal().span.tolist(), 1, ring.q, ring.s, PRIME)
        assert spans_equal(closed.span.tolist(), brute, PRIME)
    assert branches == {True, False}


def test_restriction_matches_colon_on_random_ideals():
    rng = np.random.default_rng(2)
    checked = 0
    for _ in range(60):
        ideal = random_dechargeable(rng, PRIME)
        ring = ideal.ring
        if ring.q < 2 or ring.s < 2:
            continue
        q = int(rng.integers(1, ring.q))
        s = int(rng.integers(1, ring.s))
        restricted = dechargeable_restrict_colon(ideal, q, s)
        expected_height = ideal.height - 1 if ring.q <= ideal.height else ideal.height
        assert restricted.height == expected_height
        assert restricted.ideal().equals(restrict(colon_x1(ideal.ideal()), q, s))
        checked += 1
    assert checked > 0


def test_dechargeable_grid():
    assert failures(dechargeable_grid(PRIME)) == []


def test_dechargeable_ideal_is_staircase_ideal_of_its_height():
    rng = np.random.default_rng(3)
    heights = set()
    for _ in range(60):
        ideal = random_dechargeable(rng, PRIME, max_q=4, max_s=5)
        heights.add(ideal.height)
        assert is_staircase_ideal(ideal.ideal(), Staircase.big_point(1, ideal.height)), ideal
    assert len(heights) > 1


def test_dechargeable_staircase_grid():
    assert failures(dechargeable_staircase_grid(PRIME)) == []


def test_dechargeable_grid_labels_carry_generators():
    label, ok = next(dechargeable_grid(PRIME, count=1))
    assert ok
    assert "generators=" in label
