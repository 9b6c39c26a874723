import random

import pytest

from modinv.cpaction import length
from modinv.straighten import UProduct, summand_length_of_product, uncross, verify_relations


def test_uncross_basic_crossing():
    prod = UProduct(4, (0, 0, 0, 0), ((1, 3), (2, 4)))
    out = uncross(prod, 5)
    assert {(item.edges, coeff) for coeff, item in out} == {
        (((1, 2), (3, 4)), 1),
        (((1, 4), (2, 3)), 1),
    }


def test_uncross_noncrossing_identity():
    prod = UProduct(4, (1, 0, 0, 0), ((1, 2), (3, 4)))
    assert uncross(prod, 3) == [(1, prod)]


def test_uncross_with_x_factor():
    prod = UProduct(5, (0, 0, 0, 0, 1), ((1, 3), (2, 4)))
    out = uncross(prod, 7)
    assert len(out) == 2
    for _, item in out:
        assert item.x_exp == (0, 0, 0, 0, 1)
        assert item.is_noncrossing()


def random_uproduct(rng, m, max_edges=3, max_x=2):
    edges = []
    for _ in range(rng.randrange(0, max_edges + 1)):
        i = rng.randrange(1, m)
        j = rng.randrange(i + 1, m + 1)
        edges.append((i, j))
    x_exp = tuple(rng.randrange(0, max_x + 1) for _ in range(m))
    return UProduct(m, x_exp, tuple(edges))


def test_uncross_preserves_value():
    rng = random.Random(42)
    checked = 0
    while checked < 60:
        p = rng.choice([2, 3, 5, 7])
        m = rng.choice([4, 5, 6])
        prod = random_uproduct(rng, m)
        if prod.is_noncrossing():
            continue
        out = uncross(prod, p)
        total = prod.expand(p) * 0
        for coeff, item in out:
            assert item.is_noncrossing()
            total = total + item.expand(p).scale(coeff)
        assert total == prod.expand(p), (p, prod)
        checked += 1


def test_verify_relations_counts():
    assert verify_relations(3, 5) == {"three_term": 1, "plucker": 0}
    for p in [2, 3, 5, 7]:
        assert verify_relations(4, p) == {"three_term": 4, "plucker": 1}


def test_summand_length_examples():
    prod = UProduct(4, (0, 0, 0, 1), ((1, 2), (3, 4)))
    assert summand_length_of_product(prod, 7) == 2

    tall = UProduct(4, (1, 1, 1, 2), ())
    assert summand_length_of_product(tall, 7) == 6
    assert summand_length_of_product(tall, 5) == 5

    empty = UProduct(3, (0, 0, 0), ())
    assert summand_length_of_product(empty, 7) == 1


def test_summand_length_quiet_cut_matches_operator_length():
    # when no cut reaches p-1 the expanded product really has length 1 + sum(a)
    rng = random.Random(9)
    checked = 0
    while checked < 60:
        p = rng.choice([3, 5, 7])
        prod = random_uproduct(rng, 4)
        f = prod.expand(p)
        if not f:
            continue
        predicted = summand_length_of_product(prod, p)
        actual = length(f)
        if predicted < p:
            assert predicted == actual, (p, prod)
            checked += 1
        else:
            # one-sided soundness: a fired cut can only overestimate
            assert actual <= p, (p, prod)


def test_summand_length_fired_cut_is_transfer_lead():
    # the cut fires exactly when the lead monomial belongs to the transfer image
    from modinv.cpaction import transfer_image_leads

    rng = random.Random(10)
    checked = 0
    while checked < 60:
        p = rng.choice([2, 3, 5, 7])
        prod = random_uproduct(rng, 4)
        f = prod.expand(p)
        if not f:
            continue
        fired = summand_length_of_product(prod, p) == p
        leads = transfer_image_leads(4, p, f.multidegree())
        assert fired == (f.lead_monomial() in leads), (p, prod)
        checked += 1


def test_summand_length_sound_for_projectives():
    # an expanded product of true length p never slips past the cut test
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        p = rng.choice([2, 3, 5])
        prod = random_uproduct(rng, 4)
        f = prod.expand(p)
        if not f:
            continue
        if length(f) == p:
            assert summand_length_of_product(prod, p) == p, (p, prod)
        checked += 1


def test_uproduct_validation():
    with pytest.raises(ValueError):
        UProduct(3, (0, 0), ())
    with pytest.raises(ValueError):
        UProduct(3, (0, 0, 0), ((2, 2),))
