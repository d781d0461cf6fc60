"""Weight distribution of the projective-line point set attached to U x U.

Each subspace U of F_{q^n} induces a set of points on the projective line
PG(1, q^n): the point <(1, alpha)> carries weight dim(U cap alpha^{-1} U) and
<(0, 1)> carries weight k.  The weight distribution (N_0, ..., N_2k) encodes
the same data as the orbit's intersection distribution, and several size and
f_U bounds are most natural in this language.  The points themselves are never
materialized; everything derives from the orbit sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .orbit import OrbitProfile, orbit_profile
from .subspace import Subspace

__all__ = [
    "UxUWeightDistribution",
    "uxu_weight_distribution",
    "fU_from_linear_set",
    "linear_set_bounds",
]


@dataclass(frozen=True)
class UxUWeightDistribution:
    """Point counts N_i by weight i for the rank-2k set attached to U x U."""

    q: int
    n: int
    k: int
    stab_deg: int  # F_p-degree of the stabilizer field of U
    N: tuple[int, ...]  # length 2k+1, indices are weights 0..2k

    @property
    def rank(self) -> int:
        return 2 * self.k

    @property
    def size_L(self) -> int:
        return sum(self.N[1:])

    @property
    def min_weight(self) -> int:
        return next(i for i in range(1, len(self.N)) if self.N[i])

    def to_dict(self) -> dict:
        return {
            "N": list(self.N),
            "size_L": self.size_L,
            "rank": self.rank,
            "min_weight": self.min_weight,
        }


def uxu_weight_distribution(u: Subspace, profile: OrbitProfile | None = None) -> UxUWeightDistribution:
    """Weight distribution of the U x U point set, from the orbit sweep."""
    pr = profile or orbit_profile(u)
    q, k = pr.q, pr.k
    stab_units = u.field.p**pr.stab_deg - 1
    n_list = [0] * (2 * k + 1)
    for i, lam in enumerate(pr.lam):
        n_list[i] = lam * (q - 1)
    n_list[k] = stab_units + 2
    n_points = q**pr.n + 1
    if n_list[0] != n_points - sum(n_list[1:]):
        raise AssertionError("weight-0 count disagrees with the point total")
    dist = UxUWeightDistribution(q=q, n=pr.n, k=k, stab_deg=pr.stab_deg, N=tuple(n_list))
    total = sum(dist.N[i] * (q**i - 1) for i in range(1, 2 * k + 1))
    if total != q ** (2 * k) - 1:
        raise AssertionError("weighted point count does not add up to q^2k - 1")
    return dist


def fU_from_linear_set(dist: UxUWeightDistribution) -> int:
    """Fraction count recovered from the point-set size: (|L| - 2)/(q - 1)."""
    num = dist.size_L - 2
    if num % (dist.q - 1):
        raise ArithmeticError(f"|L| - 2 = {num} is not divisible by q - 1 = {dist.q - 1}")
    return num // (dist.q - 1)


def _bound(name: str, status: str, value, detail: str) -> dict:
    return {"name": name, "status": status, "value": value, "detail": detail}


def _fraction_str(fr: Fraction) -> str:
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def linear_set_bounds(dist: UxUWeightDistribution, f_u: int | None = None) -> list[dict]:
    """Evaluate the size and f_U bounds against a computed distribution.

    Returns one record per bound with status pass/fail/skipped and the bound's
    value.  Bounds whose premises do not hold are reported skipped.
    """
    q, n, k = dist.q, dist.n, dist.k
    e = dist.min_weight
    size = dist.size_L
    qt = dist.N[k] - 1  # N_k = (stabilizer order) + 2, so this is q^t
    if f_u is None:
        f_u = fU_from_linear_set(dist)
    out = []

    # lower bound on the point count when a weight-1 point exists
    if dist.N[1] > 0 and 2 * k <= n + 1:
        low = q ** (2 * k - 1) + 1
        out.append(
            _bound(
                "size_lower",
                "pass" if size >= low else "fail",
                low,
                f"|L| = {size} >= q^(rank-1) + 1 = {low} since N_1 = {dist.N[1]} > 0",
            )
        )
    else:
        out.append(_bound("size_lower", "skipped", None, "N_1 = 0 or rank > n + 1"))

    # upper bound on the point count in terms of the minimum weight
    num = (q ** (2 * k) - 1) - (qt + 1) * (q**k - q**e)
    upper = Fraction(num, q**e - 1)
    out.append(
        _bound(
            "size_upper",
            "pass" if size <= upper else "fail",
            int(upper) if upper.denominator == 1 else _fraction_str(upper),
            f"|L| = {size} <= {_fraction_str(upper)} with min weight e = {e}",
        )
    )

    # upper bound on f_U via the distance distribution
    if 2 * k <= n and e <= k - 1:
        num = (q ** (2 * k) - 1) - (qt + 1) * (q**k - q**e) - 2 * (q**e - 1)
        fu_up = Fraction(num, (q**e - 1) * (q - 1))
        out.append(
            _bound(
                "fu_upper",
                "pass" if f_u <= fu_up else "fail",
                int(fu_up) if fu_up.denominator == 1 else _fraction_str(fu_up),
                f"f_U = {f_u} <= {_fraction_str(fu_up)}",
            )
        )
    else:
        out.append(_bound("fu_upper", "skipped", None, "needs 2k <= n and e < k"))

    # guaranteed lower bound on f_U via a divisor of n (large q only)
    if q >= n and 2 * k <= n:
        prime_n = n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))
        divisors = [s for s in range(1, n) if n % s == 0 and s >= e]
        if prime_n and e > 1:
            out.append(
                _bound(
                    "fu_divisor_lower", "fail", None, f"n = {n} prime forces min weight 1, but e = {e}"
                )
            )
        else:
            # without further information only the weakest admissible divisor
            # is guaranteed, except that e = 1 or prime n forces s = 1
            s_guar = 1 if (e == 1 or prime_n) else max(divisors)
            guar = (q ** (2 * k - s_guar) - 1) // (q - 1)
            realized = [s for s in divisors if (q ** (2 * k - s) - 1) // (q - 1) <= f_u]
            best = min(realized) if realized else None
            best_val = (q ** (2 * k - best) - 1) // (q - 1) if best is not None else None
            out.append(
                _bound(
                    "fu_divisor_lower",
                    "pass" if f_u >= guar else "fail",
                    guar,
                    f"guaranteed with s = {s_guar}: f_U = {f_u} >= {guar}; "
                    f"strongest realized divisor s = {best} giving {best_val}",
                )
            )
    else:
        out.append(_bound("fu_divisor_lower", "skipped", None, "needs q >= n and 2k <= n"))

    return out
