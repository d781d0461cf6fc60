"""The twisted-embedding family U_{s,gamma} inside F_{q^2k}.

For n = 2k, gcd(s,k) = 1 and gamma outside F_{q^k}, the subspace
U = {u + u^(q^s) * gamma : u in F_{q^k}} always generates a full-length orbit
that is optimal or quasi-optimal, and every question about it (classification,
shift containment, orbit equality, Frobenius behaviour) reduces to congruences
on the exponent of gamma.  This module implements the family, the fast
exponent criteria, the representative enumeration, and the closed-form counts,
plus the constructive existence path for arbitrary even n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .field import Field
from .linalg import rank
from .subspace import Subspace, intersect, intersect_dim, span

__all__ = [
    "UsGammaParams",
    "BudgetExceededError",
    "make_usg",
    "falpha_kernel_dim",
    "classify_usg_by_norm",
    "contains_q2_shift",
    "enumerate_representatives",
    "closed_form_counts",
    "census",
    "construct_quasi_optimal",
    "split_prime_power",
]


class BudgetExceededError(RuntimeError):
    """Raised when a requested computation exceeds the allowed work budget."""


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, h) with q = p^h, p prime."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    h = 0
    while q > 1:
        if q % p:
            raise ValueError(f"{q} is not a prime power")
        q //= p
        h += 1
    return p, h


@dataclass(frozen=True)
class UsGammaParams:
    """Exponent-level description of one member of the family.

    gamma = w^ell for the primitive element w of F_{q^2k}; everything the
    family's theory needs is arithmetic on (s, ell).
    """

    p: int
    h: int
    k: int
    s: int
    ell: int

    def __post_init__(self):
        if self.k <= 2:
            raise ValueError("the family needs k > 2")
        if not 1 <= self.s <= self.k - 1 or gcd(self.s, self.k) != 1:
            raise ValueError(f"s = {self.s} must lie in [1, k-1] with gcd(s, k) = 1")
        q = self.q
        if self.ell % (q**self.k + 1) == 0:
            raise ValueError("gamma lies in F_{q^k}")

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def n(self) -> int:
        return 2 * self.k

    @property
    def coset_modulus(self) -> int:
        """Order index of theta(F_{q^k}^*) inside F_{q^n}^*: (q^k+1)(q-1)."""
        return (self.q**self.k + 1) * (self.q - 1)

    def canonical(self) -> tuple[int, int]:
        """Representative (s, ell) with s <= k/2 and ell reduced mod the coset."""
        m = self.coset_modulus
        if 2 * self.s <= self.k:
            return self.s, self.ell % m or m
        return self.k - self.s, (-self.ell) % m or m


def make_usg(field: Field, params: UsGammaParams) -> Subspace:
    """The subspace {u + u^(q^s) gamma : u in F_{q^k}} as a canonical Subspace."""
    _check_field(field, params)
    q, k, s, ell = params.q, params.k, params.s, params.ell
    step = field.subfield_exponent(field.h * k)
    gens = []
    for i in range(k):
        b = (i * step) % field.N
        u = field.add(b, (b * q**s + ell) % field.N)
        if u is None:
            raise AssertionError("family vector collapsed to zero; gamma invariant broken")
        gens.append(u)
    out = span(field, gens)
    if out.dim != k:
        raise AssertionError(f"family subspace has dimension {out.dim}, expected {k}")
    return out


def falpha_kernel_dim(field: Field, params: UsGammaParams, alpha) -> int:
    """dim(U ∩ alpha U) for the family, via the kernel of a 3-term q-polynomial.

    alpha decomposes as alpha_0 + alpha_1 gamma over F_{q^k}; the intersection
    is the kernel of x -> -a1 x + (a0^(q^s) - a0 - a1 A) x^(q^s)
    + a1^(q^s) B^(q^s) x^(q^2s) on F_{q^k}, where A and B are the relative
    trace and negated relative norm of gamma.  For alpha in F_q the map is
    identically zero and the stabilizer dimension k is returned.
    """
    _check_field(field, params)
    f = field
    q, k, s, ell = params.q, params.k, params.s, params.ell
    if alpha is None:
        raise ValueError("alpha must be nonzero")
    alpha %= f.N
    if alpha % f.subfield_exponent(f.h) == 0:
        return k
    qk = q**k
    a1 = f.div(f.sub(alpha, (alpha * qk) % f.N), f.sub(ell, (ell * qk) % f.N))
    a0 = f.sub(alpha, f.mul(a1, ell))
    a_tr = f.add(ell, (ell * qk) % f.N)  # trace of gamma down one step
    b_norm = f.neg((ell * (1 + qk)) % f.N)  # minus the relative norm of gamma
    c = [None, None, None]
    c[0] = f.neg(a1)
    c[1] = f.sub(f.sub(f.frobenius(a0, f.h * s), a0), f.mul(a1, a_tr))
    c[2] = f.mul(f.frobenius(a1, f.h * s), f.frobenius(b_norm, f.h * s))
    exps = [0, s % k, (2 * s) % k]
    step = f.subfield_exponent(f.h * k)
    rows = []
    ops = f.rowops
    for i in range(f.h * k):
        x = (i * step) % f.N
        y = None
        for cj, ej in zip(c, exps):
            y = f.add(y, f.mul(cj, (x * q**ej) % f.N))
        rows.append(ops.zero if y is None else f.packed(y))
    r = rank(rows, ops)
    ker = f.h * k - r
    if ker % f.h:
        raise AssertionError("kernel of an F_q-linear map must have F_q-structure")
    dim = ker // f.h
    if dim > 2:
        raise AssertionError(f"family intersection dimension {dim} exceeds 2")
    return dim


def classify_usg_by_norm(params: UsGammaParams) -> str:
    """'quasi_optimal' iff the full norm of gamma is 1, i.e. (q-1) | ell."""
    return "quasi_optimal" if params.ell % (params.q - 1) == 0 else "optimal"


def contains_q2_shift(params: UsGammaParams) -> bool:
    """True iff some shift of F_{q^2} lies in the subspace: k odd and the
    norm of gamma down to F_{q^2} equals -1."""
    if params.k % 2 == 0:
        return False
    q, n, ell = params.q, params.n, params.ell
    order = q**n - 1
    half = order // 2 if q % 2 else 0  # log of -1
    return (ell * (order // (q * q - 1))) % order == half


def enumerate_representatives(q: int, k: int):
    """All (s, ell) naming pairwise distinct orbits: s <= k/2 coprime to k,
    ell in [1, (q^k+1)(q-1)] avoiding multiples of q^k+1."""
    p, h = split_prime_power(q)
    if k <= 2:
        raise ValueError("the family needs k > 2")
    qk1 = q**k + 1
    for s in range(1, k // 2 + 1):
        if gcd(s, k) != 1:
            continue
        for ell in range(1, qk1 * (q - 1) + 1):
            if ell % qk1:
                yield UsGammaParams(p, h, k, s, ell)


def _phi(k: int) -> int:
    out = 1
    n = k
    d = 2
    while d * d <= n:
        if n % d == 0:
            out *= d - 1
            n //= d
            while n % d == 0:
                out *= d
                n //= d
        d += 1
    if n > 1:
        out *= n - 1
    return out


def closed_form_counts(q: int, k: int) -> dict:
    """Family sizes without enumeration: total, split by class, and shifts."""
    if k <= 2:
        raise ValueError("the family needs k > 2")
    phi = _phi(k)
    total = phi * q**k * (q - 1) // 2
    quasi = phi * q**k // 2 if q % 2 == 0 else phi * (q**k - 1) // 2
    shift = phi // 2 * ((q**k + 1) // (q + 1) - 1) if k % 2 else 0
    return {
        "total": total,
        "quasi_optimal": quasi,
        "optimal": total - quasi,
        "with_q2_shift": shift,
    }


def _check_field(field: Field, params: UsGammaParams) -> None:
    if field.p != params.p or field.h != params.h or field.n != params.n:
        raise ValueError(
            f"params expect F_{params.p}^({params.h}*{params.n}), got F_{field.p}^({field.h}*{field.n})"
        )


def _check(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _verify_member(field: Field, params: UsGammaParams, verify: str) -> tuple[dict, list]:
    """Run the requested verification level on one family member."""
    cls = classify_usg_by_norm(params)
    shift = contains_q2_shift(params)
    extras: dict = {}
    mismatches = []
    u = make_usg(field, params)
    if u.stabilizer_degree() != field.h:
        mismatches.append((params.s, params.ell, "stabilizer is larger than F_q"))
    if verify == "fast":
        from .orbit import q2_shift_count, sidon_test

        if sidon_test(u) != (cls == "optimal"):
            mismatches.append((params.s, params.ell, "product test disagrees with norm class"))
        if (q2_shift_count(u) > 0) != shift:
            mismatches.append((params.s, params.ell, "direct shift search disagrees"))
    elif verify == "brute":
        from .orbit import orbit_profile

        pr = orbit_profile(u)
        expected_d = 2 * params.k - 4 if cls == "quasi_optimal" else 2 * params.k - 2
        if not pr.full_length:
            mismatches.append((params.s, params.ell, "orbit not full length"))
        if pr.distance != expected_d:
            mismatches.append(
                (params.s, params.ell, f"distance {pr.distance}, norm predicts {expected_d}")
            )
        if pr.contains_q2_shift != shift:
            mismatches.append((params.s, params.ell, "shift flag disagrees with sweep"))
        extras["distance"] = pr.distance
        extras["lambda2"] = pr.lam[2] if len(pr.lam) > 2 else 0
        extras["r_param"] = pr.r_param
    return extras, mismatches


def _verify_worker(work: tuple) -> tuple:
    p, h, k, s, ell, verify = work
    from .field import build_field

    field = build_field(p, h, 2 * k)
    extras, mismatches = _verify_member(field, UsGammaParams(p, h, k, s, ell), verify)
    return s, ell, extras, mismatches


def census(
    q: int,
    k: int,
    verify: str = "none",
    budget: int | None = None,
    field: Field | None = None,
    counts_only: bool = False,
    jobs: int = 1,
) -> dict:
    """Enumerate the family, classify every member, and cross-check totals.

    verify='fast' additionally builds each subspace and checks the cheap
    criteria against it; verify='brute' runs the full orbit sweep per member.
    Returns rows sorted by (s, ell), the tallies, the Frobenius summary, and a
    list of named cross-checks.  counts_only skips the per-row enumeration and
    reports just the closed forms and the Frobenius summary.  jobs > 1 spreads
    the verification work over that many processes (same output either way).
    """
    from .equivalence import frobenius_structure

    if verify not in ("none", "fast", "brute"):
        raise ValueError(f"unknown verify level {verify!r}")
    p, h = split_prime_power(q)
    counts = closed_form_counts(q, k)
    report = frobenius_structure(q, k)
    if counts_only:
        if verify != "none":
            raise ValueError("counts-only census cannot verify individual members")
        checks = [
            _check(
                "closed_form_totals",
                report.total_codes == counts["total"],
                f"family size {counts['total']}, Frobenius summary covers {report.total_codes}",
            )
        ]
        return {
            "q": q,
            "k": k,
            "verify": verify,
            "rows": [],
            "totals": counts,
            "frobenius": report.to_dict(),
            "checks": checks,
        }
    hn = h * 2 * k
    if verify == "brute":
        work = (q ** (2 * k) - 1) // (q - 1) * q**k
        if budget is not None and work > budget:
            raise BudgetExceededError(
                f"brute census needs ~{work} intersection computations, budget is {budget}"
            )
    if verify != "none" and field is None and jobs <= 1:
        from .field import build_field

        field = build_field(p, h, 2 * k)

    rows = []
    tally = {"total": 0, "quasi_optimal": 0, "optimal": 0, "with_q2_shift": 0}
    frob_tally: dict[int, int] = {}
    checks = []
    mismatches = []
    reps = list(enumerate_representatives(q, k))
    for params in reps:
        cls = classify_usg_by_norm(params)
        shift = contains_q2_shift(params)
        iota = next(
            (i for i in range(1, hn) if params.ell % report.ell_hat[i - 1] == 0), hn
        )
        orbit_len = gcd(iota, hn)
        rows.append(
            {
                "s": params.s,
                "ell": params.ell,
                "classification": cls,
                "contains_q2_shift": shift,
                "frobenius_group_order": hn // orbit_len,
                "frobenius_orbit_size": orbit_len,
            }
        )
        tally["total"] += 1
        tally[cls] += 1
        if shift:
            tally["with_q2_shift"] += 1
        frob_tally[orbit_len] = frob_tally.get(orbit_len, 0) + 1

    if verify != "none":
        by_key = {(row["s"], row["ell"]): row for row in rows}
        if jobs > 1:
            from multiprocessing import Pool

            work = [(p, h, k, r.s, r.ell, verify) for r in reps]
            with Pool(jobs) as pool:
                results = pool.map(_verify_worker, work)
        else:
            results = []
            for params in reps:
                extras, bad = _verify_member(field, params, verify)
                results.append((params.s, params.ell, extras, bad))
        for s, ell, extras, bad in results:
            by_key[(s, ell)].update(extras)
            mismatches.extend(bad)

    rows.sort(key=lambda r: (r["s"], r["ell"]))
    mismatches.sort()
    checks.append(
        _check(
            "closed_form_totals",
            tally == counts,
            f"enumerated {tally}, closed forms {counts}",
        )
    )
    checks.append(
        _check(
            "frobenius_histogram",
            frob_tally
            == {size: size * cnt for size, cnt in report.histogram.items()}
            and sum(frob_tally.values()) == counts["total"],
            f"per-row orbit sizes {dict(sorted(frob_tally.items()))} vs "
            f"report {dict(sorted(report.histogram.items()))} (orbits x size)",
        )
    )
    checks.append(
        _check(
            "verification",
            not mismatches,
            f"{len(mismatches)} mismatches" + (f"; first: {mismatches[0]}" if mismatches else ""),
        )
    )
    return {
        "q": q,
        "k": k,
        "verify": verify,
        "rows": rows,
        "totals": counts,
        "frobenius": report.to_dict(),
        "checks": checks,
    }


def construct_quasi_optimal(field: Field, k: int) -> Subspace:
    """A quasi-optimal full-length k-dim subspace of F_{q^n}, n even.

    k = 3 takes the span of 1, w, w^2 for the primitive element w; k >= 4
    carves a k-dimensional subspace out of the half-degree family member
    U_{1, w^(q-1)} around one of its dimension-2 intersections.
    """
    n, q = field.n, field.q
    if n % 2:
        raise ValueError("the construction needs even n")
    if not 3 <= k <= n // 2:
        raise ValueError(f"k = {k} must satisfy 3 <= k <= n/2")
    if k == 3:
        return span(field, [0, 1, 2])
    kk = n // 2
    params = UsGammaParams(field.p, field.h, kk, 1, q - 1)
    big = make_usg(field, params)
    shift_log = None
    for j in range(1, field.N):
        if intersect_dim(big, big.shift(j)) == 2:
            shift_log = j
            break
    if shift_log is None:
        raise AssertionError("quasi-optimal family member has no dimension-2 intersection")
    s_sub = intersect(big, big.shift(shift_log))
    s_back = s_sub.shift((-shift_log) % field.N)
    logs = list(s_sub.ground_basis_logs()) + list(s_back.ground_basis_logs())
    cur = span(field, logs)
    for b in big.ground_basis_logs():
        if cur.dim >= k:
            break
        if not cur.contains(b):
            logs.append(b)
            cur = span(field, logs)
    if cur.dim != k:
        raise AssertionError(f"completed subspace has dimension {cur.dim}, wanted {k}")
    return cur
