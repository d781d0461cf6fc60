"""Canonical subspaces: spans, membership, intersections, duals, stabilizers."""

import random

import pytest

from orbitcodes.field import build_field
from orbitcodes.subspace import (
    Subspace,
    intersect,
    intersect_dim,
    orthogonal_complement,
    scalar_shift,
    span,
    span_canonical,
    subspace_distance,
)


def brute_elements(u):
    """All element logs of u (plus None), found by scanning the whole field."""
    f = u.field
    return {a for a in [None] + list(range(f.N)) if u.contains(a)}


def test_span_canonical_under_generator_changes():
    f = build_field(3, 1, 4)
    rng = random.Random(11)
    for _ in range(100):
        gens = [rng.randrange(f.N) for _ in range(rng.randrange(1, 4))]
        u = span(f, gens)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        # scale every generator by a nonzero field scalar in the ground field
        step = f.subfield_exponent(f.h)
        scaled = [(g + step * rng.randrange(f.q - 1)) % f.N for g in shuffled]
        assert span(f, scaled) == u
        assert span_canonical(f, scaled) == u
        # adding a dependent vector changes nothing
        inside = rng.choice(sorted(brute_elements(u) - {None}))
        assert span(f, gens + [inside]) == u


def test_membership_matches_linear_combinations():
    f = build_field(2, 1, 6)
    u = span(f, [0, 1, 5])
    elems = brute_elements(u)
    assert len(elems) == 2**u.dim
    for a in elems - {None}:
        assert u.contains(a)
    outside = set(range(f.N)) - elems
    assert all(not u.contains(a) for a in outside)


def test_ground_field_subspaces():
    f = build_field(2, 2, 4)  # F_4-subspaces of F_{4^4}
    u = span(f, [0, 1], 2)
    assert u.dim == 2 and u.fp_dim == 4
    # closed under F_4 scalars
    step = f.subfield_exponent(2)
    for a in brute_elements(u) - {None}:
        assert u.contains((a + step) % f.N)
    with pytest.raises(ValueError):
        span(f, [0], 3)  # 3 does not divide 8


def test_intersect_agrees_with_dimension_and_elements():
    for p, h, n in ((2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 3)):
        f = build_field(p, h, n)
        rng = random.Random(f.order)
        for _ in range(40):
            u = span(f, [rng.randrange(f.N) for _ in range(2)])
            v = span(f, [rng.randrange(f.N) for _ in range(2)])
            w = intersect(u, v)
            assert w.dim == intersect_dim(u, v)
            assert brute_elements(w) == brute_elements(u) & brute_elements(v)


def test_shift_and_frobenius_preserve_structure():
    f = build_field(3, 1, 4)
    u = span(f, [0, 7])
    rng = random.Random(5)
    for _ in range(50):
        a = rng.randrange(f.N)
        shifted = u.shift(a)
        assert shifted.dim == u.dim
        assert brute_elements(shifted) == {None} | {(x + a) % f.N for x in brute_elements(u) - {None}}
        t = rng.randrange(4)
        img = u.frobenius_image(t)
        assert brute_elements(img) == {None} | {f.frobenius(x, t) for x in brute_elements(u) - {None}}
    assert scalar_shift(3, u) == u.shift(3)
    with pytest.raises(ValueError):
        scalar_shift(None, u)


def test_subspace_distance():
    f = build_field(2, 1, 6)
    u = span(f, [0, 1, 2])
    assert subspace_distance(u, u) == 0
    v = u.shift(1)
    meet = intersect_dim(u, v)
    assert subspace_distance(u, v) == 2 * (3 - meet)
    w = span(f, [0, 1])
    assert subspace_distance(u, w) == u.dim + w.dim - 2 * intersect_dim(u, w)


def test_orthogonal_complement_properties():
    for p, h, n in ((2, 1, 6), (3, 1, 4)):
        f = build_field(p, h, n)
        rng = random.Random(60 + f.order)
        for _ in range(25):
            u = span(f, [rng.randrange(f.N) for _ in range(rng.randrange(1, 3))])
            c = orthogonal_complement(u)
            assert c.dim == n - u.dim
            assert orthogonal_complement(c) == u
            # trace form vanishes between the two
            for a in list(brute_elements(u) - {None})[:6]:
                for b in list(brute_elements(c) - {None})[:6]:
                    assert f.rel_trace(f.mul(a, b), h * n, h) is None


def test_stabilizer_degree():
    f = build_field(2, 1, 12)
    # a shifted copy of the subfield F_{2^4} has stabilizer F_{2^4}
    step = f.subfield_exponent(4)
    u = span(f, [(7 + j * step) % f.N for j in range(4)])
    assert u.dim == 4
    assert u.stabilizer_degree() == 4
    # a generic-looking subspace has trivial stabilizer
    v = span(f, [0, 1, 5])
    assert v.stabilizer_degree() == 1
    # stabilizer of an F_4-subspace contains F_4
    f44 = build_field(2, 2, 4)
    w = span(f44, [0, 1], 2)
    assert w.stabilizer_degree() % 2 == 0


def test_zero_and_full_spans():
    f = build_field(2, 1, 4)
    full = span(f, list(range(4)))
    assert full.dim <= 4
    zero = span(f, [])
    assert zero.dim == 0 and zero.fp_dim == 0
    assert not zero.contains(f.one) and zero.contains(None)
    assert intersect(full, zero) == zero
