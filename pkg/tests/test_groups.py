"""Groups, subgroups, quotient images, group rings."""

import random

import pytest

from latcoh import (GroupRingElement, all_subgroups, augmentation, make_group,
                    norm_element, quotient_images)
from latcoh.groups import gaussian_binomial, project_subgroup, projection_hom

from oracles import brute_force_subgroup_count


def test_make_group_examples():
    assert make_group(3, 4).order == 81
    assert make_group(3, 1).order == 3
    assert make_group(5, 2).order == 25
    with pytest.raises(ValueError):
        make_group(4, 2)
    with pytest.raises(ValueError):
        make_group(1, 2)


def test_element_arithmetic():
    g = make_group(3, 2)
    a = g.element((1, 2))
    b = g.element((2, 2))
    assert (a * b).exps == (0, 1)
    assert a.inverse().exps == (2, 1)
    assert (a ** 3).is_identity
    assert a.order() == 3 and g.identity.order() == 1


def test_subgroup_counts():
    g = make_group(3, 2)
    subs = all_subgroups(g)
    assert len(subs) == 6
    by_order = {}
    for H in subs:
        by_order[H.order] = by_order.get(H.order, 0) + 1
    assert by_order == {1: 1, 3: 4, 9: 1}

    assert len(all_subgroups(make_group(3, 4))) == 212
    assert sum(gaussian_binomial(4, k, 3) for k in range(5)) == 212
    assert len(all_subgroups(make_group(2, 1))) == 2


@pytest.mark.parametrize("r", [1, 2, 3])
def test_subgroup_count_against_closure_oracle(r):
    g = make_group(3, r)
    assert len(all_subgroups(g)) == brute_force_subgroup_count(g)


def test_subgroup_canonical_dedup():
    g = make_group(3, 4)
    tau = g.element((1, 1, 0, 0))
    h1 = g.subgroup([tau, g.generator(2), g.generator(3)])
    h2 = g.subgroup([tau ** 2, g.generator(3), g.generator(2)])
    assert h1 == h2


def test_subgroup_closure_property():
    g = make_group(3, 3)
    subs = all_subgroups(g)
    rng = random.Random(0)
    for _ in range(100):
        h = rng.choice(subs)
        k = rng.choice(subs)
        if h.is_subgroup_of(k):
            assert all(k.contains(b) for b in h.basis)
        a, b = rng.choice(h.elements()), rng.choice(h.elements())
        assert h.contains(a * b) and h.contains(a.inverse())


def test_quotient_images_examples():
    g = make_group(3, 4)
    h = g.subgroup([g.generator(0)])
    h12, h3, h4 = quotient_images(h)
    assert h12.order == 3 and h3.is_trivial and h4.is_trivial

    g34 = g.subgroup([g.generator(2), g.generator(3)])
    h12, h3, h4 = quotient_images(g34)
    assert h12.is_trivial and h3.order == 3 and h4.order == 3

    mixed = g.subgroup([g.element((1, 0, 1, 0))])
    h12, h3, h4 = quotient_images(mixed)
    assert h12.order == 3 and h3.order == 3 and h4.is_trivial
    assert h12.basis[0].exps == (1, 0)

    with pytest.raises(ValueError):
        quotient_images(make_group(3, 2).full_subgroup())


def test_norm_and_augmentation():
    g = make_group(3, 4)
    h = g.subgroup([g.generator(2)])
    n = norm_element(h)
    assert augmentation(n) == 3
    assert len(n.support) == 3
    assert augmentation(norm_element(g.trivial_subgroup())) == 1
    g34 = g.subgroup([g.generator(2), g.generator(3)])
    assert len(norm_element(g34).support) == 9

    x = GroupRingElement.of(g.generator(0)) - GroupRingElement.one(g)
    assert augmentation(x) == 0
    y = 2 * GroupRingElement.of(g.generator(0) * g.generator(1)) + 5 * GroupRingElement.one(g)
    assert augmentation(y) == 7


def test_norm_kills_translates():
    g = make_group(3, 2)
    for h_sub in all_subgroups(g):
        n = norm_element(h_sub)
        for h in h_sub.elements():
            shifted = n * (GroupRingElement.of(h) - GroupRingElement.one(g))
            assert augmentation(shifted) == 0
            assert not shifted.coeffs


def test_augmentation_is_multiplicative():
    g = make_group(3, 3)
    rng = random.Random(4)
    elems = g.elements()
    for _ in range(50):
        x = GroupRingElement(g, {rng.choice(elems): rng.randint(-4, 4)
                                 for _ in range(4)})
        y = GroupRingElement(g, {rng.choice(elems): rng.randint(-4, 4)
                                 for _ in range(4)})
        assert augmentation(x * y) == augmentation(x) * augmentation(y)
        assert augmentation(x + y) == augmentation(x) + augmentation(y)


def test_projection_hom():
    g = make_group(3, 4)
    pr = projection_hom(g, (0, 1))
    assert pr(g.element((1, 2, 1, 1))).exps == (1, 2)
    h = g.subgroup([g.element((1, 2, 0, 1))])
    img = project_subgroup(h, (0, 1), make_group(3, 2))
    assert img.order == 3
