"""Distance and intersection distributions of cyclic orbit codes.

The orbit of a k-dimensional F_q-subspace U of F_{q^n} under the unit group
consists of the scalar multiples alpha*U.  Everything here is computed from
one brute-force sweep over orbit representatives: for each coset representative
alpha = w^j of the stabilizer, dim(U ∩ alpha*U) is found by the rank of the
stacked coordinate matrices.  No closed-form shortcuts are taken on this path;
it serves as the ground truth that the fast criteria elsewhere are checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import reduce_row
from .subspace import Subspace

__all__ = [
    "OrbitProfile",
    "orbit_profile",
    "intersection_histogram",
    "fractions_oracle",
    "sidon_test",
    "q2_shift_count",
    "classify_code",
    "classify_dim3",
    "dim3_signatures",
    "verify_structure",
]


def _require_fq_linear(u: Subspace) -> None:
    if u.ground_deg != u.field.h:
        raise ValueError("orbit analysis requires an F_q-linear subspace (ground_deg == h)")
    if u.dim == 0:
        raise ValueError("orbit analysis requires a nonzero subspace")


def intersection_histogram(u: Subspace) -> tuple[int, list[int]]:
    """Sweep the orbit: histogram of dim(U ∩ w^j U) over stabilizer-coset reps.

    Returns (stab_deg, hist) where stab_deg is the F_p-degree of the
    stabilizer field and hist[d] counts representatives j in [0, orbit size)
    with intersection dimension d.  Only j = 0 reaches d = k.
    """
    _require_fq_linear(u)
    f = u.field
    ops = f.rowops
    stab_deg = u.stabilizer_degree()
    orbit_size = f.N // (f.p**stab_deg - 1)
    logs = u.basis_logs()
    piv, base = u.pivots, u.rows
    packed = f._packed
    n_mod = f.N
    k = u.dim
    h = f.h
    fp_dim = u.fp_dim
    hist = [0] * (k + 1)
    add, smul, digit, lowest = ops.add, ops.smul, ops.digit, ops.lowest
    p = ops.p
    zero = ops.zero
    npiv = len(piv)
    for j in range(orbit_size):
        residual = []
        for lg in logs:
            row = packed[(lg + j) % n_mod]
            for idx in range(npiv):
                c = digit(row, piv[idx])
                if c:
                    row = add(row, smul(p - c, base[idx]))
            if row != zero:
                residual.append(row)
        # forward-eliminate the residual rows among themselves (kept rows monic)
        r = 0
        rpiv: list[int] = []
        rrows: list = []
        for row in residual:
            for idx in range(r):
                c = digit(row, rpiv[idx])
                if c:
                    row = add(row, smul(p - c, rrows[idx]))
            pos = lowest(row)
            if pos >= 0:
                c = digit(row, pos)
                if c != 1:
                    row = smul(pow(c, -1, p), row)
                rpiv.append(pos)
                rrows.append(row)
                r += 1
        hist[(fp_dim - r) // h] += 1
    if hist[k] != 1:
        raise AssertionError("stabilizer coset enumeration hit a repeated codeword")
    return stab_deg, hist


def fractions_oracle(u: Subspace) -> int:
    """Number of distinct fractions u/v over nonzero u, v in U, counted projectively."""
    _require_fq_linear(u)
    f = u.field
    period = f.N // (f.q - 1)
    classes = u.point_classes()
    diffs = {(a - b) % period for a in classes for b in classes}
    return len(diffs)


def sidon_test(u: Subspace) -> bool:
    """Quadruple test: ab = cd forces {aF_q, bF_q} = {cF_q, dF_q}.

    Products are compared projectively, which absorbs exactly the scalar
    freedom the definition allows.
    """
    _require_fq_linear(u)
    f = u.field
    period = f.N // (f.q - 1)
    classes = u.point_classes()
    seen: dict[int, tuple[int, int]] = {}
    for i, a in enumerate(classes):
        for b in classes[i:]:
            key = (a + b) % period
            pair = (a, b)
            if seen.setdefault(key, pair) != pair:
                return False
    return True


def q2_shift_count(u: Subspace) -> int:
    """Number of distinct cyclic shifts a*F_{q^2} contained in U (0 when n is odd)."""
    _require_fq_linear(u)
    f = u.field
    if f.n % 2 or u.dim < 2:
        return 0
    eta = f.subfield_exponent(2 * f.h)  # log of a generator of F_{q^2}^*
    ops = f.rowops
    piv, rows = u.pivots, u.rows
    packed = f._packed
    zero = ops.zero
    count = 0
    for j in range(eta):
        if reduce_row(packed[j], piv, rows, ops) == zero:
            if reduce_row(packed[j + eta], piv, rows, ops) == zero:
                count += 1
    return count


@dataclass(frozen=True)
class OrbitProfile:
    """Everything the orbit sweep reveals about Orb(U)."""

    q: int
    n: int
    k: int
    stab_deg: int  # degree of the stabilizer field over F_p
    orbit_size: int
    omega: tuple[int, ...]  # (omega_2, ..., omega_{2k})
    lam: tuple[int, ...]  # (lambda_0, ..., lambda_ell)
    ell: int
    distance: int
    f_u: int
    pair_count: int  # ordered pairs of distinct projective points of U
    full_length: bool
    spread: bool
    optimal: bool
    quasi_optimal: bool
    sidon: bool
    contains_q2_shift: bool
    q2_shifts: int
    r_param: int | None

    def flags(self) -> dict:
        return {
            "full_length": self.full_length,
            "spread": self.spread,
            "optimal": self.optimal,
            "quasi_optimal": self.quasi_optimal,
            "sidon": self.sidon,
            "contains_q2_shift": self.contains_q2_shift,
        }

    def to_dict(self) -> dict:
        d = {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "stab_deg": self.stab_deg,
            "orbit_size": self.orbit_size,
            "omega": list(self.omega),
            "lambda": list(self.lam),
            "ell": self.ell,
            "distance": self.distance,
            "f_u": self.f_u,
            "q2_shifts": self.q2_shifts,
            "r_param": self.r_param,
        }
        d.update(self.flags())
        return d


def orbit_profile(u: Subspace) -> OrbitProfile:
    """Full distance/intersection profile of Orb(U) by brute-force sweep."""
    f = u.field
    q, n, k, h = f.q, f.n, u.dim, f.h
    stab_deg, hist = intersection_histogram(u)
    orbit_size = f.N // (f.p**stab_deg - 1)
    stab_points = (f.p**stab_deg - 1) // (q - 1)
    omega = tuple(hist[k - i] if i < k else hist[0] for i in range(1, k + 1))
    nonzero = [d for d in range(k) if hist[d]]
    if orbit_size == 1:
        raise ValueError("orbit consists of a single codeword")
    ell = max(nonzero)
    lam = tuple(hist[i] * stab_points for i in range(ell + 1))
    distance = 2 * (k - ell)
    f_u = stab_points + sum(lam[1:])
    oracle = fractions_oracle(u)
    if f_u != oracle:
        raise AssertionError(f"fraction count mismatch: distribution gives {f_u}, oracle {oracle}")
    # ordered pairs of distinct points, grouped by the fraction's intersection dim
    m_points = (q**k - 1) // (q - 1)
    pair_count = m_points * (m_points - 1)
    by_class = sum(((q**i - 1) // (q - 1)) * lam[i] for i in range(1, ell + 1))
    by_class += (stab_points - 1) * (q**k - 1) // (q - 1)
    if pair_count != by_class:
        raise AssertionError("pair-count identity failed; sweep is inconsistent")
    full_length = stab_deg == h
    spread = ell == 0
    optimal = full_length and distance == 2 * k - 2
    quasi = full_length and k >= 2 and distance == 2 * k - 4
    shifts = q2_shift_count(u)
    r_param: int | None = None
    if quasi:
        eps = 1 if shifts else 0
        num = lam[2] - eps * q
        if num % (q * (q + 1)):
            raise AssertionError(
                f"lambda_2 = {lam[2]} does not have the shape eps*q + r*q*(q+1) (eps={eps})"
            )
        r_param = num // (q * (q + 1))
    return OrbitProfile(
        q=q,
        n=n,
        k=k,
        stab_deg=stab_deg,
        orbit_size=orbit_size,
        omega=omega,
        lam=lam,
        ell=ell,
        distance=distance,
        f_u=f_u,
        pair_count=pair_count,
        full_length=full_length,
        spread=spread,
        optimal=optimal,
        quasi_optimal=quasi,
        sidon=sidon_test(u),
        contains_q2_shift=shifts > 0,
        q2_shifts=shifts,
        r_param=r_param,
    )


def classify_code(u: Subspace, profile: OrbitProfile | None = None) -> dict:
    """Classification flags of Orb(U), plus the quantities they rest on."""
    pr = profile or orbit_profile(u)
    out = pr.flags()
    out["distance"] = pr.distance
    out["orbit_size"] = pr.orbit_size
    out["f_u"] = pr.f_u
    return out


def dim3_signatures(q: int, n: int) -> dict[str, tuple[int, int, int]]:
    """The three possible (omega_2, omega_4, omega_6) for full-length k=3, d=2."""
    p_points = (q**n - 1) // (q - 1)
    sig = {
        "III.1": (q + q * q * (q + 1), 0, (q**n - q**4) // (q - 1)),
        "III.2": (q * (q + 1), q**3 * (q + 1), (q**n - q**5) // (q - 1)),
        "III.3": (q, q * q * (q + 1) ** 2, p_points - q * q * (q + 1) ** 2 - q - 1),
    }
    vals = list(sig.values())
    assert len(set(vals)) == 3, "case signatures must be pairwise distinct"
    return sig


def classify_dim3(u: Subspace, profile: OrbitProfile | None = None) -> str:
    """Case label for a full-length orbit of a 3-dimensional subspace."""
    pr = profile or orbit_profile(u)
    if pr.k != 3:
        raise ValueError("classification applies to 3-dimensional subspaces")
    if not pr.full_length:
        raise ValueError("classification applies to full-length orbit codes")
    if pr.distance == 6:
        return "I"
    if pr.distance == 4:
        return "II"
    sig = dim3_signatures(pr.q, pr.n)
    for label, expected in sig.items():
        if pr.omega == expected:
            return label
    raise AssertionError(f"omega {pr.omega} matches no distance-2 case at q={pr.q}, n={pr.n}")


def _check(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _skip(name: str, why: str) -> dict:
    return {"name": name, "status": "skipped", "detail": why}


def verify_structure(
    u: Subspace,
    profile: OrbitProfile | None = None,
    include_duality: bool = True,
) -> list[dict]:
    """Run the structural identities a profile must satisfy; never silent.

    Each check reports pass/fail/skipped; premises that do not apply to this
    subspace are reported as skipped rather than dropped.
    """
    pr = profile or orbit_profile(u)
    f = u.field
    q, n, k = pr.q, pr.n, pr.k
    t_points = (f.p**pr.stab_deg - 1) // (q - 1)
    p_points = (q**n - 1) // (q - 1)
    lam_at = lambda i: pr.lam[i] if i < len(pr.lam) else 0
    checks = []

    # weight distribution of the rank-2k linear set of U x U
    n_weights = [0] * (k + 1)
    for i in range(min(k, pr.ell + 1)):
        n_weights[i] = lam_at(i) * (q - 1)
    n_weights[k] = f.p**pr.stab_deg + 1
    total = sum(n_weights[i] * (q**i - 1) for i in range(1, k + 1))
    checks.append(
        _check(
            "pair_identity",
            total == q ** (2 * k) - 1,
            f"sum N_i (q^i - 1) = {total}, expected q^2k - 1 = {q ** (2 * k) - 1}",
        )
    )

    lin_set_size = sum(n_weights[1:])
    routes_agree = (lin_set_size - 2) % (q - 1) == 0 and (lin_set_size - 2) // (q - 1) == pr.f_u
    checks.append(
        _check(
            "fraction_routes",
            routes_agree,
            f"f_U = {pr.f_u} vs (|L| - 2)/(q - 1) with |L| = {lin_set_size}",
        )
    )

    if include_duality:
        dual = u.orthogonal()
        dual_pr = orbit_profile(dual)
        # omega tuples have lengths k and n-k; beyond min(k, n-k) one side has
        # no codewords, so compare the overlap and require zero tails
        lo = min(k, n - k)
        same = (
            dual_pr.stab_deg == pr.stab_deg
            and dual_pr.omega[:lo] == pr.omega[:lo]
            and all(x == 0 for x in pr.omega[lo:])
            and all(x == 0 for x in dual_pr.omega[lo:])
        )
        checks.append(
            _check(
                "duality",
                same,
                f"omega(U) = {pr.omega}, omega(U-perp) = {dual_pr.omega}",
            )
        )
    else:
        checks.append(_skip("duality", "not requested"))

    # divisibility constraints on the intersection distribution
    qq1 = q * (q + 1)
    if not pr.full_length:
        checks.append(_skip("divisibility", "orbit is not full-length"))
    elif n % 2:
        bad = [i for i in range(k) if lam_at(i) % qq1]
        ok = not bad and (pr.f_u - 1) % qq1 == 0
        checks.append(
            _check(
                "divisibility",
                ok,
                f"n odd: lambda_i and f_U - 1 must be multiples of {qq1}; offending i: {bad}",
            )
        )
    else:
        c = pr.q2_shifts
        # c must equal (q^{2m} - 1)/(q^2 - 1) for some m >= 0
        m2, acc = 0, 0
        while acc < c:
            m2 += 1
            acc = (q ** (2 * m2) - 1) // (q * q - 1)
        if acc != c or 2 * m2 > k - 1:
            # the shifts inside U are the F_{q^2}-points of the largest
            # F_{q^2}-subspace of U, so for a full-length orbit the count must
            # be (q^2m - 1)/(q^2 - 1) with 2m < k
            checks.append(
                _check("divisibility", False, f"impossible shift count {c} for full-length, k = {k}")
            )
        else:
            bad = [i for i in range(k) if i != 2 * m2 and lam_at(i) % qq1]
            ok = not bad and lam_at(2 * m2) % qq1 == q % qq1
            rem = (pr.f_u - 1 - (q if m2 >= 1 else 0)) % qq1
            ok = ok and rem == 0
            checks.append(
                _check(
                    "divisibility",
                    ok,
                    f"n even, {c} shifts (m={m2}): lambda_{2 * m2} = q mod {qq1}, "
                    f"others 0 mod {qq1}; offending i: {bad}; f_U residue {rem}",
                )
            )

    # quasi-optimal distribution shape and the two lambda identities
    if pr.quasi_optimal and k >= 3:
        eps = 1 if pr.contains_q2_shift else 0
        r = pr.r_param
        lam2, lam1, lam0 = lam_at(2), lam_at(1), lam_at(0)
        big_q = pr.pair_count
        ok_shape = (
            r is not None
            and lam2 == eps * q + r * qq1
            and lam1 == big_q - (q + 1) * lam2
            and lam0 == p_points - lam1 - lam2 - 1
        )
        checks.append(
            _check(
                "quasi_shape",
                ok_shape,
                f"lambda = ({lam0}, {lam1}, {lam2}), eps = {eps}, r = {r}",
            )
        )
        ok_ident = q * lam2 == big_q - (pr.f_u - 1) and q * lam1 == (q + 1) * (pr.f_u - 1) - big_q
        checks.append(
            _check(
                "lambda_identities",
                ok_ident,
                f"q*lambda_2 = {q * lam2} vs Q - (f_U - 1) = {big_q - (pr.f_u - 1)}; "
                f"q*lambda_1 = {q * lam1} vs (q+1)(f_U - 1) - Q = {(q + 1) * (pr.f_u - 1) - big_q}",
            )
        )
        if lam1 != 0:
            upper = (q ** (k - 1) - 1) * (q ** (k - 2) - 1) // ((q + 1) * (q - 1) ** 2) - eps
            ok_r = r is not None and 1 - eps <= r <= upper
            checks.append(_check("lambda2_bound", ok_r, f"r = {r} must lie in [{1 - eps}, {upper}]"))
        else:
            if k == 3:
                ok_a = eps == 1 and lam2 == q + q * q * (q + 1)
                checks.append(_check("lambda2_bound", ok_a, f"lambda_1 = 0, k = 3: lambda_2 = {lam2}"))
            else:
                ok_a = (k // 2 - eps) % (q + 1) == 0
                checks.append(
                    _check("lambda2_bound", ok_a, f"lambda_1 = 0, k > 3: (q+1) | (floor(k/2) - eps)")
                )
    else:
        checks.append(_skip("quasi_shape", "orbit is not quasi-optimal"))
        checks.append(_skip("lambda_identities", "orbit is not quasi-optimal"))
        checks.append(_skip("lambda2_bound", "orbit is not quasi-optimal"))

    # dimension bound from the distance
    if pr.distance > 2:
        if pr.full_length:
            ok_dim = 2 * k < n + pr.ell
            detail = f"full-length: 2k = {2 * k} < n + ell = {n + pr.ell}"
        else:
            ok_dim = 2 * k <= n + pr.ell
            detail = f"2k = {2 * k} <= n + ell = {n + pr.ell}"
        checks.append(_check("dim_bound", ok_dim, detail))
    else:
        checks.append(_skip("dim_bound", "distance 2 carries no dimension bound"))

    # lower bound on f_U when some codeword meets U in dimension exactly 1
    if k >= 2 and pr.omega[k - 2] != 0 and n >= 2 * k - 1:
        bound = (q ** (2 * k - 1) - 1) // (q - 1)
        checks.append(
            _check("fu_lower", pr.f_u >= bound, f"f_U = {pr.f_u} >= (q^(2k-1) - 1)/(q - 1) = {bound}")
        )
    else:
        checks.append(_skip("fu_lower", "omega_{2(k-1)} = 0 or n < 2k - 1"))

    # global range of f_U, with both extremes characterized
    low = (q**k - 1) // (q - 1)
    high = pr.pair_count + 1
    ok_range = (
        low <= pr.f_u <= high
        and (pr.f_u == low) == (pr.stab_deg == f.h * k)
        and (pr.f_u == high) == pr.sidon
    )
    checks.append(
        _check(
            "fu_range",
            ok_range,
            f"{low} <= f_U = {pr.f_u} <= Q + 1 = {high}; "
            f"lower iff field shift, upper iff Sidon",
        )
    )

    if k >= 2:
        checks.append(
            _check(
                "sidon_iff_optimal",
                pr.sidon == pr.optimal,
                f"sidon = {pr.sidon}, optimal = {pr.optimal}",
            )
        )
        if pr.sidon:
            big_q = pr.pair_count
            ok_sd = (
                pr.ell <= 1
                and lam_at(1) == big_q
                and lam_at(1) == pr.f_u - 1
                and lam_at(0) == p_points - lam_at(1) - 1
            )
            checks.append(
                _check(
                    "sidon_distribution",
                    ok_sd,
                    f"lambda = ({lam_at(0)}, {lam_at(1)}), Q = {big_q}, f_U = {pr.f_u}",
                )
            )
        else:
            checks.append(_skip("sidon_distribution", "not a Sidon space"))
    else:
        checks.append(_skip("sidon_iff_optimal", "k = 1"))
        checks.append(_skip("sidon_distribution", "k = 1"))

    return checks
