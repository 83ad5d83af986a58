from itertools import product

import pytest
from hypothesis import given, settings

from snzlab.clopen import (
    EMPTY, FULL, ClopenSet, Cylinder, FinPermutation, apply_permutation,
    complement, difference, expand_support, from_cylinder, intersect, union,
)

from conftest import clopen_sets, random_clopen, random_perm
from oracles import naive_member


def H(zeros=(), ones=()):
    return from_cylinder(Cylinder(zeros, ones))


def test_full_and_empty():
    assert H() == FULL
    assert FULL.is_full and not FULL.is_empty
    assert EMPTY.is_empty and EMPTY.patterns == ()
    assert FULL.support == () and FULL.patterns == ((),)


def test_single_cylinder_encoding():
    u = H({1}, {2})
    assert u.support == (1, 2)
    assert u.patterns == ((0, 1),)


def test_overlapping_cylinder_rejected():
    with pytest.raises(ValueError):
        Cylinder({1}, {1})


def test_negative_coordinate_rejected():
    with pytest.raises(ValueError):
        Cylinder({-1}, ())


def test_basic_boolean_examples():
    assert union(H((), {5}), H({5}, ())) == FULL
    assert intersect(H((), {5}), H({5}, ())) == EMPTY
    assert difference(FULL, H({1}, ())) == H((), {1})
    assert complement(FULL) == EMPTY and complement(EMPTY) == FULL


def test_difference_by_enumeration():
    # FULL \ H({1},{}) over support {1}: keep assignments with coordinate 1 == 1
    kept = [p for p in product((0, 1), repeat=1) if not p[0] == 0]
    assert difference(FULL, H({1}, ())) == ClopenSet([1], kept)


def test_redundant_coordinates_are_dropped():
    u = ClopenSet([0, 1], [(0, 0), (0, 1)])
    assert u.support == (0,) and u.patterns == ((0,),)
    assert ClopenSet([3, 4], list(product((0, 1), repeat=2))) == FULL


def test_expand_support_examples():
    assert len(expand_support(FULL, {0, 1}).patterns) == 4
    assert len(expand_support(H((), {3}), {3, 7}).patterns) == 2
    with pytest.raises(ValueError):
        expand_support(H({2}, ()), {3})


def test_expand_support_count_by_enumeration(rng):
    for _ in range(100):
        u = random_clopen(rng, range(8), 5)
        extra = rng.sample([c for c in range(8, 14)], rng.randint(0, 4))
        C = set(u.support) | set(extra)
        view = expand_support(u, C)
        brute = sum(
            1 for bits in product((0, 1), repeat=len(C))
            if naive_member(u, dict(zip(sorted(C), bits)))
        )
        assert len(view.patterns) == brute == len(u.patterns) * 2 ** (len(C) - len(u.support))


def test_permutation_examples():
    pi = FinPermutation.swap(1, 2)
    assert apply_permutation(H({1}, {2}), pi) == H({2}, {1})
    assert apply_permutation(FULL, FinPermutation.from_cycle(0, 3, 7)) == FULL
    assert pi.compose(pi.inverse()) == FinPermutation()


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        FinPermutation({1: 2})


def test_permutation_round_trip(rng):
    for _ in range(200):
        u = random_clopen(rng)
        pi = random_perm(rng)
        assert apply_permutation(apply_permutation(u, pi), pi.inverse()) == u


def test_de_morgan_random_pairs(rng):
    for _ in range(500):
        u, v = random_clopen(rng), random_clopen(rng)
        assert complement(union(u, v)) == intersect(complement(u), complement(v))


@given(clopen_sets())
def test_canonicalization_idempotent(u):
    again = ClopenSet(u.support, u.patterns)
    assert again == u
    assert complement(complement(u)) == u


@given(clopen_sets())
def test_patterns_denote_disjoint_cylinders(u):
    cyls = list(u.cylinders())
    for a in range(len(cyls)):
        for b in range(a + 1, len(cyls)):
            x, y = cyls[a], cyls[b]
            # disjoint iff some coordinate is forced to 0 in one and 1 in the other
            assert (x.zeros & y.ones) or (x.ones & y.zeros)


@settings(max_examples=60, deadline=None)
@given(clopen_sets(coords=13, max_support=5), clopen_sets(coords=13, max_support=5))
def test_membership_matches_set_semantics(u, v):
    ops = {
        "union": (union(u, v), lambda a, b: a or b),
        "intersect": (intersect(u, v), lambda a, b: a and b),
        "difference": (difference(u, v), lambda a, b: a and not b),
    }
    coords = sorted(set(u.support) | set(v.support))
    for bits in product((0, 1), repeat=len(coords)):
        pt = dict(zip(coords, bits))
        a, b = naive_member(u, pt), naive_member(v, pt)
        for res, fn in ops.values():
            assert naive_member(res, pt) == fn(a, b)
        assert naive_member(complement(u), pt) == (not a)


def test_json_form():
    u = H({1}, {2}) | H({2}, {1})
    obj = u.to_json()
    assert obj == {"support": [1, 2], "patterns": ["01", "10"]}
    assert ClopenSet.from_json(obj) == u


def test_support_limit_guard():
    big = H(range(13), ())
    with pytest.raises(ValueError):
        union(big, H((), range(13, 26)))
