"""Equivalence of family orbits under shifts and Frobenius isometries.

Orbit equality and semilinear equivalence for the twisted-embedding family
reduce to congruences modulo M = (q^k+1)(q-1), the index of the image of
F_{q^k}^* under u -> u^(q^s-1) gamma.  This module provides those tests, the
automorphism groups, and a purely arithmetic summary of how the Galois group
partitions the whole family into isometry classes -- no field tables needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .subspace import Subspace
from .usg import UsGammaParams, split_prime_power, _phi

__all__ = [
    "orbit_equal_test",
    "frobenius_isometry_test",
    "aut_group",
    "FrobeniusReport",
    "frobenius_structure",
    "galois_action_oracle",
    "orbit_canon_set",
    "orbit_member",
]


def _same_family(a: UsGammaParams, b: UsGammaParams) -> None:
    if (a.p, a.h, a.k) != (b.p, b.h, b.k):
        raise ValueError("parameters describe different ambient families")


def orbit_equal_test(a: UsGammaParams, b: UsGammaParams) -> bool:
    """True iff the two parameter pairs name the same orbit code."""
    _same_family(a, b)
    m = a.coset_modulus
    if b.s == a.s and (b.ell - a.ell) % m == 0:
        return True
    return b.s == (a.k - a.s) % a.k and (b.ell + a.ell) % m == 0


def frobenius_isometry_test(a: UsGammaParams, b: UsGammaParams, i: int) -> bool:
    """True iff the i-th power of the p-Frobenius maps Orb(U_a) onto Orb(U_b)."""
    _same_family(a, b)
    m = a.coset_modulus
    pi = pow(a.p, i % (a.h * a.n), m)
    if b.s == a.s and (b.ell - a.ell * pi) % m == 0:
        return True
    return b.s == (a.k - a.s) % a.k and (b.ell + a.ell * pi) % m == 0


def aut_group(params: UsGammaParams, t: int = 1) -> list[int]:
    """Exponents j such that sigma_{p^t}^j fixes the orbit, j in [1, h*n/t]."""
    hn = params.h * params.n
    if t < 1 or hn % t:
        raise ValueError(f"t = {t} must divide the total extension degree {hn}")
    m = params.coset_modulus
    return [
        j
        for j in range(1, hn // t + 1)
        if params.ell * (pow(params.p, j * t, m) - 1) % m == 0
    ]


@dataclass(frozen=True)
class FrobeniusReport:
    """Arithmetic summary of the Galois action on the whole family."""

    q: int
    k: int
    p: int
    h: int
    total_codes: int
    coset_modulus: int
    ell_hat: tuple[int, ...]  # minimal fixed ell for sigma_p^i, i = 1..hn-1
    interesting: tuple[int, ...]  # i whose fixed codes exist in the family
    minimal: tuple[int, ...]  # representatives: smallest i per ell_hat value
    group_counts: dict[int, int]  # i -> #codes with stabilizer exactly <sigma_p^i>
    histogram: dict[int, int]  # Galois orbit size -> number of orbits

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "total_codes": self.total_codes,
            "coset_modulus": self.coset_modulus,
            "ell_hat": list(self.ell_hat),
            "interesting": list(self.interesting),
            "minimal": list(self.minimal),
            "group_counts": {str(i): c for i, c in sorted(self.group_counts.items())},
            "histogram": {str(s): c for s, c in sorted(self.histogram.items())},
        }


def frobenius_structure(q: int, k: int) -> FrobeniusReport:
    """Partition the family by Frobenius stabilizer, by integer arithmetic only.

    For each i the smallest exponent fixed by sigma_p^i is
    ell_hat_i = M / gcd(p^i - 1, M); a code is fixed iff ell_hat_i | ell.
    Counting multiples of ell_hat_i that avoid the forbidden subfield coset
    gives exact stabilizer counts and the orbit-size histogram.
    """
    p, h = split_prime_power(q)
    if k <= 2:
        raise ValueError("the family needs k > 2")
    hn = h * 2 * k
    m = (q**k + 1) * (q - 1)
    qk1 = q**k + 1
    ell_hat = tuple(m // gcd(pow(p, i, m) - 1 if i else m, m) for i in range(1, hn))
    for i, lh in enumerate(ell_hat, start=1):
        if m % lh or lh * (p - 1) > m:
            raise AssertionError(f"ell_hat_{i} = {lh} violates its divisor bounds")
    interesting = tuple(i for i, lh in enumerate(ell_hat, start=1) if lh % qk1)
    minimal = tuple(
        i
        for i in interesting
        if i == min(t for t in interesting if ell_hat[t - 1] == ell_hat[i - 1])
    )
    half_phi = _phi(k) // 2 if k > 2 else 1
    alpha = {}
    for i in minimal:
        lh = ell_hat[i - 1]
        alpha[i] = m // lh - m // (lh * qk1 // gcd(lh, qk1))
    group_counts = {}
    for i in minimal:
        cnt = alpha[i] - sum(alpha[j] for j in minimal if j != i and i % j == 0)
        if cnt < 0:
            raise AssertionError(f"negative stabilizer count at i = {i}")
        group_counts[i] = half_phi * cnt
    total = half_phi * q**k * (q - 1)
    histogram = {}
    fixed = 0
    for i, cnt in group_counts.items():
        if cnt == 0:
            continue
        if cnt % i:
            raise AssertionError(f"{cnt} codes with orbit size {i} cannot tile orbits")
        histogram[i] = histogram.get(i, 0) + cnt // i
        fixed += cnt
    rest = total - fixed
    if rest % hn:
        raise AssertionError(f"{rest} free codes do not tile orbits of size {hn}")
    if rest:
        histogram[hn] = histogram.get(hn, 0) + rest // hn
    if sum(size * cnt for size, cnt in histogram.items()) != total:
        raise AssertionError("orbit histogram does not cover the family")
    return FrobeniusReport(
        q=q,
        k=k,
        p=p,
        h=h,
        total_codes=total,
        coset_modulus=m,
        ell_hat=ell_hat,
        interesting=interesting,
        minimal=minimal,
        group_counts=group_counts,
        histogram=histogram,
    )


def galois_action_oracle(u: Subspace, i: int) -> Subspace:
    """Image of the subspace under the i-th power of the p-Frobenius."""
    return u.frobenius_image(i)


def orbit_canon_set(v: Subspace) -> frozenset:
    """Row tuples of every member of Orb(v), for repeated membership tests."""
    stab_units = v.field.p ** v.stabilizer_degree() - 1
    size = v.field.N // stab_units
    return frozenset(tuple(v.shift(j).rows) for j in range(size))


def orbit_member(candidate: Subspace, v: Subspace, canon: frozenset | None = None) -> bool:
    """True iff candidate equals some shift of v."""
    if candidate.field is not v.field or candidate.ground_deg != v.ground_deg:
        raise ValueError("subspaces live in different ambient spaces")
    if canon is None:
        canon = orbit_canon_set(v)
    return tuple(candidate.rows) in canon
