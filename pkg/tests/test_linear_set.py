"""Point-weight distributions of L_{UxU} and the size / f_U bounds."""

import random

import pytest

from orbitcodes.field import build_field
from orbitcodes.linear_set import (
    UxUWeightDistribution,
    fU_from_linear_set,
    linear_set_bounds,
    uxu_weight_distribution,
)
from orbitcodes.orbit import orbit_profile
from orbitcodes.subspace import span


def bound(bounds, name):
    return next(b for b in bounds if b["name"] == name)


def test_distribution_known_values():
    f = build_field(2, 1, 6)
    # case III.2: lambda = (32, 24, 6), trivial stabilizer
    u = span(f, [0, 1, 2])
    d = uxu_weight_distribution(u)
    assert d.N == (32, 24, 6, 3, 0, 0, 0)
    assert d.rank == 6
    assert d.size_L == 33
    assert d.min_weight == 1
    assert fU_from_linear_set(d) == 31

    # a spread instance: U = F_8, all weight concentrated at k
    step = f.subfield_exponent(3)
    w = span(f, [j * step for j in range(3)])
    dw = uxu_weight_distribution(w)
    assert dw.N == (56, 0, 0, 9, 0, 0, 0)
    assert dw.size_L == 9
    assert dw.min_weight == 3
    assert fU_from_linear_set(dw) == 7


def test_pesi_mass_identity_random():
    # sum N_i (q^i - 1) = q^rank - 1 for every computed distribution
    for p, h, n in ((2, 1, 6), (3, 1, 4), (2, 2, 4)):
        f = build_field(p, h, n)
        rng = random.Random(f.order)
        for _ in range(30):
            u = span(f, [rng.randrange(f.N) for _ in range(rng.randrange(1, 3))])
            if u.dim == 0 or u.fp_dim == f.m:
                continue
            d = uxu_weight_distribution(u)
            q = f.q
            assert sum(c * (q**i - 1) for i, c in enumerate(d.N)) == q**d.rank - 1
            assert d.N[0] == q**n + 1 - d.size_L


def test_tightness_of_size_lower():
    # III.2 has exactly q^(2k-1) + 1 points
    f = build_field(2, 1, 6)
    d = uxu_weight_distribution(span(f, [0, 1, 2]))
    b = bound(linear_set_bounds(d), "size_lower")
    assert b["status"] == "pass"
    assert b["value"] == 33 == d.size_L


def test_tightness_of_upper_bounds_on_sidon():
    f = build_field(2, 1, 6)
    u = span(f, [0, 1, 3])
    pr = orbit_profile(u)
    assert pr.sidon
    d = uxu_weight_distribution(u, pr)
    bounds = linear_set_bounds(d, pr.f_u)
    up = bound(bounds, "size_upper")
    assert up["status"] == "pass" and up["value"] == 45 == d.size_L
    fu = bound(bounds, "fu_upper")
    assert fu["status"] == "pass" and fu["value"] == 43 == pr.f_u


def test_spread_skips_fu_upper():
    f = build_field(2, 1, 6)
    step = f.subfield_exponent(3)
    d = uxu_weight_distribution(span(f, [j * step for j in range(3)]))
    bounds = linear_set_bounds(d)
    assert bound(bounds, "fu_upper")["status"] == "skipped"  # e = k
    assert bound(bounds, "size_upper")["status"] == "pass"
    assert bound(bounds, "size_lower")["status"] == "skipped"  # N_1 = 0


def test_divisor_lower_bound_large_q():
    # q = 5 >= n = 4: the guaranteed divisor bound applies
    f = build_field(5, 1, 4)
    rng = random.Random(54)
    applied = 0
    for _ in range(25):
        u = span(f, [rng.randrange(f.N), rng.randrange(f.N)])
        if u.dim != 2:
            continue
        pr = orbit_profile(u)
        d = uxu_weight_distribution(u, pr)
        b = bound(linear_set_bounds(d, pr.f_u), "fu_divisor_lower")
        assert b["status"] in ("pass", "skipped")
        if b["status"] == "pass":
            applied += 1
    assert applied > 0


def test_divisor_lower_bound_impossible_distribution():
    # a rank-4 set over F_5 in prime ambient degree with min weight 2 cannot
    # exist; the bound reports the contradiction instead of passing silently
    fake = UxUWeightDistribution(q=5, n=5, k=2, stab_deg=2, N=(3100, 0, 26, 0, 0))
    b = bound(linear_set_bounds(fake), "fu_divisor_lower")
    assert b["status"] == "fail"


def test_fu_requires_exact_division():
    fake = UxUWeightDistribution(q=3, n=2, k=1, stab_deg=1, N=(5, 5, 0))
    with pytest.raises(ArithmeticError):
        fU_from_linear_set(fake)


def test_distribution_profile_consistency():
    # the distribution agrees with the profile it was derived from
    f = build_field(3, 1, 4)
    rng = random.Random(81)
    for _ in range(20):
        u = span(f, [rng.randrange(f.N), rng.randrange(f.N)])
        if u.dim == 0 or u.fp_dim == f.m:
            continue
        pr = orbit_profile(u)
        d = uxu_weight_distribution(u, pr)
        assert fU_from_linear_set(d) == pr.f_u
        assert d.stab_deg == pr.stab_deg
        k = u.dim
        assert d.N[k] == f.p**pr.stab_deg + 1
