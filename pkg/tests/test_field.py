"""Field towers: tables, arithmetic routes, subfields, trace/norm, power maps."""

import random

import pytest

from orbitcodes.field import (
    TABLE_LIMIT,
    Field,
    arith,
    build_field,
    default_modulus,
    frobenius,
    rel_trace_norm,
    subfield_test,
    theta_membership,
)

SECTION7_MODULUS = (1, 0, 1, 1, 1, 0, 0, 0, 1)  # x^8 + x^4 + x^3 + x^2 + 1


def test_build_basic_fields():
    f = build_field(2, 1, 8, SECTION7_MODULUS)
    assert f.order == 256 and f.N == 255
    assert f.modulus == SECTION7_MODULUS

    f3 = build_field(3, 1, 1)
    assert f3.order == 3
    # the unique primitive element of F_3 is 2 = -1
    assert f3.dense(f3.omega) == 2

    f44 = build_field(2, 2, 4, SECTION7_MODULUS)
    assert list(f44.subfield_logs(2)) == [0, 85, 170]
    a = 85
    assert f44.frobenius(a, 1) == f44.add(f44.one, a)  # a^2 = 1 + a in F_4


def test_build_field_errors():
    with pytest.raises(ValueError):
        build_field(4, 1, 3)  # p not prime
    with pytest.raises(ValueError):
        build_field(2, 1, 30)  # table limit
    # x^4 + 1 = (x+1)^4 over F_2: reducible
    with pytest.raises(ValueError):
        Field(2, 1, 4, (1, 0, 0, 0, 1))
    # x^4 + x^3 + x^2 + x + 1 is irreducible but its root has order 5
    with pytest.raises(ValueError):
        Field(2, 1, 4, (1, 1, 1, 1, 1))


def test_default_modulus_deterministic_and_primitive():
    for p, m in ((2, 6), (3, 4), (5, 3), (7, 2)):
        mod1 = default_modulus(p, m)
        mod2 = default_modulus(p, m)
        assert mod1 == mod2
        f = build_field(p, 1, m, mod1)
        assert f.N == p**m - 1


@pytest.mark.parametrize("p,h,n", [(2, 1, 8), (3, 1, 5), (5, 1, 3), (2, 2, 4), (3, 2, 2)])
def test_zech_vs_coordinate_routes(p, h, n):
    f = build_field(p, h, n)
    rng = random.Random(1000 + f.order)
    elems = [None] + list(range(f.N))
    for _ in range(10_000):
        a = rng.choice(elems)
        b = rng.choice(elems)
        assert f.add(a, b) == f.add_via_coords(a, b)
        assert f.mul(a, b) == f.mul_via_coords(a, b)


@pytest.mark.parametrize("p,h,n", [(2, 1, 6), (3, 1, 4), (2, 2, 3)])
def test_frobenius_is_automorphism(p, h, n):
    f = build_field(p, h, n)
    rng = random.Random(2000 + f.order)
    elems = [None] + list(range(f.N))
    for _ in range(2000):
        a, b = rng.choice(elems), rng.choice(elems)
        t = rng.randrange(0, 3 * f.m)
        assert f.frobenius(f.add(a, b), t) == f.add(f.frobenius(a, t), f.frobenius(b, t))
        assert f.frobenius(f.mul(a, b), t) == f.mul(f.frobenius(a, t), f.frobenius(b, t))
        assert f.frobenius(a, f.m) == a  # Galois group order
    assert frobenius(f, None, 2) is None


def test_arith_dispatch():
    f = build_field(2, 1, 6)
    i, j = 11, 47
    assert arith(f, "mul", i, j) == (i + j) % f.N
    assert arith(f, "add", i, f.neg(i)) is None
    assert arith(f, "pow", f.omega, f.N) == f.one
    assert arith(f, "neg", None) is None
    assert arith(f, "inv", i) == (-i) % f.N
    with pytest.raises(ZeroDivisionError):
        arith(f, "inv", None)
    with pytest.raises(ValueError):
        arith(f, "conj", i)


def test_trace_norm_values_and_transitivity():
    f = build_field(2, 1, 12)
    h, n = 1, 12
    for k in (2, 3, 6):
        # norm of -1 from F_{q^n} to F_{q^k} is (-1)^{n/k}; char 2: always 1
        assert f.rel_norm(f.minus_one, h * n, h * k) == f.pow_(f.minus_one, n // k)
    assert f.rel_trace(None, 12, 4) is None
    rng = random.Random(3)
    for _ in range(300):
        a = rng.randrange(f.N)
        # transitivity through the intermediate field of degree 6
        two_step = f.rel_norm(f.rel_norm(a, 12, 6), 6, 3)
        assert two_step == f.rel_norm(a, 12, 3)
        t_two = f.rel_trace(f.rel_trace(a, 12, 6), 6, 3)
        assert t_two == f.rel_trace(a, 12, 3)
        # results land in the target subfield
        assert f.in_subfield(f.rel_norm(a, 12, 4), 4)
        assert f.in_subfield(f.rel_trace(a, 12, 4), 4)
    # q=2: the norm down to F_2 of any nonzero element is 1
    assert all(f.rel_norm(a, 12, 1) == f.one for a in range(0, f.N, 97))

    f5 = build_field(5, 1, 2)
    # norm of -1 from F_25 to F_5 is (-1)^2 = 1
    assert rel_trace_norm(f5, "norm", f5.minus_one, 2, 1) == f5.one
    with pytest.raises(ValueError):
        rel_trace_norm(f5, "norm", 1, 2, 3)
    with pytest.raises(ValueError):
        rel_trace_norm(f5, "gcd", 1, 2, 1)


def test_subfield_membership():
    f = build_field(2, 2, 4)  # F_256 over F_4
    assert subfield_test(f, None, 2)
    assert subfield_test(f, f.omega, 8)
    assert not subfield_test(f, f.omega, 4)
    step = f.subfield_exponent(4)
    assert all(subfield_test(f, e, 4) for e in range(0, f.N, step))
    with pytest.raises(ValueError):
        subfield_test(f, f.omega, 3)  # 3 does not divide 8


def test_kernel_of_norm_is_power_map_image():
    # ker N_{q^n/q^k} = theta_{q^k}(F_{q^n}^*), element by element
    for p, h, n, k in ((2, 1, 6, 3), (3, 1, 4, 2), (2, 2, 4, 2)):
        f = build_field(p, h, n)
        for x in range(f.N):
            in_kernel = f.rel_norm(x, h * n, h * k) == f.one
            in_image = theta_membership(f, x, h * n, h * k)
            assert in_kernel == in_image


def test_theta_membership_examples():
    # n = 2k: theta_q(F_{q^k}^*) is generated by w^((q^k+1)(q-1))
    for p, h, k in ((2, 1, 3), (3, 1, 3), (2, 2, 2)):
        f = build_field(p, h, 2 * k)
        q = f.q
        gen = (q**k + 1) * (q - 1)
        assert theta_membership(f, gen % f.N, h * k, h)
        assert theta_membership(f, f.one, h * k, h)
        for x in range(f.N):
            member = theta_membership(f, x, h * k, h)
            assert member == (x % gen == 0)
    # gcd(s, k) = 1 makes the q^s-power image equal to the q-power image
    f = build_field(2, 1, 10)
    h, k = 1, 5
    for x in range(0, f.N, 7):
        one = theta_membership(f, x, h * k, h * 1)
        other = theta_membership(f, x, h * k, h * (k - 1))
        assert one == other
    with pytest.raises(ValueError):
        theta_membership(f, None, 5, 1)


def test_wire_format():
    f = build_field(3, 1, 4)
    assert f.parse("0") is None
    assert f.parse(" w^7 ") == 7
    assert f.parse(f"w^{f.N + 2}") == 2
    assert f.fmt(None) == "0"
    assert f.fmt(13) == "w^13"
    with pytest.raises(ValueError):
        f.parse("x^2")
    for a in [None] + list(range(0, f.N, 5)):
        assert f.parse(f.fmt(a)) == a


def test_dense_and_coords_roundtrip():
    f = build_field(3, 1, 4)
    seen = set()
    for a in [None] + list(range(f.N)):
        code = f.dense(a)
        assert code not in seen
        seen.add(code)
        assert f.from_dense(code) == a
        assert f.from_coords(f.coords(a)) == a
    assert len(seen) == f.order


def test_table_limit_constant():
    assert TABLE_LIMIT >= 1 << 22
