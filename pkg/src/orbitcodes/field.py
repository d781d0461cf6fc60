"""Finite-field towers F_p < F_q=F_{p^h} < F_{q^n} in discrete-log form.

A field context fixes one primitive element ``w`` (the residue class of X
modulo the defining polynomial) and represents every nonzero element by its
discrete log, an integer in [0, p^{hn}-2].  Zero is represented by ``None``.
Multiplication and scalar-group work are then exponent arithmetic; addition
goes through a Zech logarithm table built once at construction.

Wire format for elements: ``"w^e"`` for nonzero, ``"0"`` for zero.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .linalg import row_backend

__all__ = [
    "Field",
    "build_field",
    "default_modulus",
    "TABLE_LIMIT",
    "ZERO",
    "arith",
    "frobenius",
    "rel_trace_norm",
    "subfield_test",
    "theta_membership",
]

# Fields larger than this would need >4M-entry log/Zech tables; refuse loudly
# rather than thrash.  Counting-only code paths never build tables at all.
TABLE_LIMIT = 1 << 22

#: The zero element.  Every nonzero element is an int (its discrete log).
ZERO = None


def _factorize(n: int) -> list[int]:
    """Distinct prime factors by trial division (n stays below 2^22 here... caller-bounded)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _poly_mulmod(a: list[int], b: list[int], red: list[int], m: int, p: int) -> list[int]:
    """Product of two reduced polynomials mod f, where red = X^m mod f."""
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(2 * m - 2, m - 1, -1):
        d = prod[i]
        if d:
            prod[i] = 0
            base = i - m
            for j, cj in enumerate(red):
                if cj:
                    prod[base + j] = (prod[base + j] + d * cj) % p
    return prod[:m]


def _x_has_full_order(coeffs: list[int], p: int, m: int, prime_divs: list[int]) -> bool:
    """True iff the residue of X mod f has multiplicative order p^m - 1.

    Full order forces f irreducible: the powers of X together with 0 then
    exhaust all p^m residues, so every nonzero residue is invertible.
    """
    n_full = p**m - 1
    red = [(-c) % p for c in coeffs[:m]]  # X^m mod f

    def x_pow(e: int) -> list[int]:
        result = [0] * m
        result[0] = 1
        base = [0] * m
        if m == 1:
            base[0] = red[0]
        else:
            base[1] = 1
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, red, m, p)
            base = _poly_mulmod(base, base, red, m, p)
            e >>= 1
        return result

    one = [1] + [0] * (m - 1)
    if x_pow(n_full) != one:
        return False
    return all(x_pow(n_full // r) != one for r in prime_divs)


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Deterministic defining polynomial of degree m over F_p.

    Scans monic polynomials in lexicographic order of the coefficient tuple
    (c_0, c_1, ..., c_{m-1}) and returns the first one whose residue class of
    X is primitive (which forces irreducibility).
    """
    n_full = p**m - 1
    prime_divs = _factorize(n_full) if n_full > 1 else []
    # necessary conditions, cheap to test: the norm of w is (-1)^m c_0 and must
    # generate F_p^*, and an irreducible polynomial of degree >= 2 has no roots
    p_divs = _factorize(p - 1) if p > 2 else []
    good_c0 = set()
    for c0 in range(1, p):
        norm = (c0 if m % 2 == 0 else -c0) % p
        if p == 2 or all(pow(norm, (p - 1) // r, p) != 1 for r in p_divs):
            good_c0.add(c0)
    for t in range(p ** (m - 1), p**m):
        digits = []
        tt = t
        for _ in range(m):
            tt, d = divmod(tt, p)
            digits.append(d)
        coeffs = digits[::-1] + [1]  # (c_0, ..., c_{m-1}, 1)
        if coeffs[0] not in good_c0:
            continue
        if m >= 2 and any(
            sum(c * pow(a, i, p) for i, c in enumerate(coeffs)) % p == 0 for a in range(1, p)
        ):
            continue
        if _x_has_full_order(coeffs, p, m, prime_divs):
            return tuple(coeffs)
    raise ValueError(f"no primitive polynomial of degree {m} over F_{p}")


class Field:
    """Field context for F_{q^n}, q = p^h, with primitive element w = X mod f."""

    def __init__(self, p: int, h: int, n: int, modulus=None):
        if p < 2 or _factorize(p) != [p]:
            raise ValueError(f"p must be prime, got {p}")
        if h < 1 or n < 1:
            raise ValueError("h and n must be positive")
        m = h * n
        order = p**m
        if order > TABLE_LIMIT:
            raise ValueError(
                f"field of size {p}^{m} exceeds the table limit 2^22; "
                "use the counting-only interfaces for parameters this large"
            )
        self.p = p
        self.h = h
        self.n = n
        self.m = m
        self.q = p**h
        self.order = order
        self.N = order - 1
        if modulus is None:
            modulus = default_modulus(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[m] != 1:
                raise ValueError(f"modulus must be monic of degree {m}")
        self.modulus = modulus
        self.rowops = row_backend(p, m)
        self._nfactors = _factorize(self.N) if self.N > 1 else []
        self._build_tables()
        self.omega = 1 % self.N if self.N > 1 else 0
        self.one = 0
        # log of -1; for p = 2 this is 1 = w^0
        self.minus_one = self.N // 2 if p != 2 else 0

    # -- construction -----------------------------------------------------

    def _build_tables(self) -> None:
        p, m, order, N = self.p, self.m, self.order, self.N
        ops = self.rowops
        not_primitive = ValueError("modulus is not primitive (w does not generate the units)")
        if p == 2:
            fmask = 0
            for i, c in enumerate(self.modulus):
                if c:
                    fmask |= 1 << i
            log = [-1] * order
            packed = [0] * N
            c = 1
            for e in range(N):
                if log[c] != -1:
                    raise not_primitive
                packed[e] = c
                log[c] = e
                c <<= 1
                if c >> m:
                    c ^= fmask
            if c != 1:
                raise not_primitive
            self._log_list = log
            self._log_dict = None
        else:
            red = {d: ops.pack([(-c * d) % p for c in self.modulus[:m]]) for d in range(1, p)}
            one = ops.pack([1] + [0] * (m - 1))
            logd: dict = {}
            packed = [0] * N
            add, shift_up, digit = ops.add, ops.shift_up, ops.digit
            r = one
            for e in range(N):
                if r in logd:
                    raise not_primitive
                packed[e] = r
                logd[r] = e
                top = digit(r, m - 1)
                r = shift_up(r)
                if top:
                    r = add(r, red[top])
            if r != one:
                raise not_primitive
            self._log_list = None
            self._log_dict = logd
        self._packed = packed
        # Zech table: zech[e] = log(1 + w^e), or -1 when 1 + w^e = 0
        one_row = packed[0]
        add = ops.add
        if p == 2:
            log = self._log_list
            self._zech = [log[c ^ 1] if c != 1 else -1 for c in packed]
        else:
            logd = self._log_dict
            self._zech = [logd.get(add(r, one_row), -1) for r in packed]

    # -- element arithmetic (elements are logs; None is zero) -------------

    def is_zero(self, a) -> bool:
        return a is None

    def add(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        z = self._zech[(b - a) % self.N]
        if z == -1:
            return None
        return (a + z) % self.N

    def neg(self, a):
        if a is None:
            return None
        return (a + self.minus_one) % self.N

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a is None or b is None:
            return None
        return (a + b) % self.N

    def inv(self, a):
        if a is None:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.N

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, e: int):
        if a is None:
            if e <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return None
        return (a * e) % self.N

    def frobenius(self, a, t: int = 1):
        """a^(p^t); t may exceed m (exponents wrap mod p^m - 1)."""
        if a is None:
            return None
        return (a * pow(self.p, t, self.N)) % self.N

    # -- coordinates -------------------------------------------------------

    def dense(self, a) -> int:
        """Base-p coordinate code w.r.t. the polynomial basis 1, X, ..., X^{m-1}."""
        return 0 if a is None else self.rowops.to_dense(self._packed[a])

    def from_dense(self, code: int):
        if code == 0:
            return None
        return self.from_packed(self.rowops.from_dense(code))

    def coords(self, a) -> tuple[int, ...]:
        return tuple(self.rowops.unpack(self.packed(a)))

    def from_coords(self, digits):
        return self.from_packed(self.rowops.pack([int(d) % self.p for d in digits]))

    def packed(self, a):
        """Row-backend form of the coordinate vector (for linear algebra)."""
        return self.rowops.zero if a is None else self._packed[a]

    def from_packed(self, row):
        if row == self.rowops.zero:
            return None
        if self._log_list is not None:
            e = self._log_list[row]
        else:
            e = self._log_dict.get(row, -1)
        if e == -1:
            raise ValueError("row does not encode a field element")
        return e

    # coordinate-route arithmetic; independent of the Zech table, used to
    # cross-check it
    def add_via_coords(self, a, b):
        p = self.p
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords((x + y) % p for x, y in zip(ca, cb))

    def mul_via_coords(self, a, b):
        if a is None or b is None:
            return None
        p, m = self.p, self.m
        red = [(-c) % p for c in self.modulus[:m]]
        prod = _poly_mulmod(list(self.coords(a)), list(self.coords(b)), red, m, p)
        return self.from_coords(prod)

    # -- wire format -------------------------------------------------------

    def fmt(self, a) -> str:
        return "0" if a is None else f"w^{a}"

    def parse(self, s: str):
        s = s.strip()
        if s == "0":
            return None
        if s.startswith("w^"):
            return int(s[2:]) % self.N
        raise ValueError(f"cannot parse element {s!r}; expected 'w^e' or '0'")

    # -- subfields and norms -----------------------------------------------

    def _check_subfield_deg(self, d: int) -> None:
        if d < 1 or self.m % d != 0:
            raise ValueError(f"degree {d} does not cut a subfield of F_{self.p}^{self.m}")

    def subfield_exponent(self, d: int) -> int:
        """log of a generator of F_{p^d}^*; its multiples are exactly that subfield."""
        self._check_subfield_deg(d)
        return self.N // (self.p**d - 1)

    def in_subfield(self, a, d: int) -> bool:
        """Is a an element of F_{p^d}?  (d in degrees over F_p, d | hn.)"""
        if a is None:
            self._check_subfield_deg(d)
            return True
        return a % self.subfield_exponent(d) == 0

    def subfield_logs(self, d: int):
        """Logs of the nonzero elements of F_{p^d}, ascending."""
        step = self.subfield_exponent(d)
        return range(0, self.N, step)

    def theta_contains(self, x, base_deg: int, sub_deg: int) -> bool:
        """Is x in the image of a -> a^(p^sub_deg - 1) over F_{p^base_deg}^*?

        The image is the cyclic group generated by w^(e*(p^sub_deg - 1)) with
        e = (p^m - 1)/(p^base_deg - 1); its order is
        (p^base_deg - 1)/(p^gcd(sub_deg, base_deg) - 1).
        """
        e = self.subfield_exponent(base_deg)
        if sub_deg < 1:
            raise ValueError("sub_deg must be positive")
        g = gcd(e * (self.p**sub_deg - 1), self.N)
        if x is None:
            return False
        return x % g == 0

    def rel_trace(self, a, d1: int, d2: int):
        """Trace from F_{p^d1} down to F_{p^d2}; both degrees over F_p."""
        self._check_subfield_deg(d1)
        if d1 % d2 != 0:
            raise ValueError(f"F_{self.p}^{d2} is not a subfield of F_{self.p}^{d1}")
        if not self.in_subfield(a, d1):
            raise ValueError("element lies outside the source field")
        acc = None
        for i in range(d1 // d2):
            acc = self.add(acc, self.frobenius(a, d2 * i))
        return acc

    def rel_norm(self, a, d1: int, d2: int):
        """Norm from F_{p^d1} down to F_{p^d2}."""
        self._check_subfield_deg(d1)
        if d1 % d2 != 0:
            raise ValueError(f"F_{self.p}^{d2} is not a subfield of F_{self.p}^{d1}")
        if a is None:
            return None
        if not self.in_subfield(a, d1):
            raise ValueError("element lies outside the source field")
        return (a * ((self.p**d1 - 1) // (self.p**d2 - 1))) % self.N

    # -- misc ---------------------------------------------------------------

    def descriptor(self) -> dict:
        return {"p": self.p, "h": self.h, "n": self.n, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"Field(p={self.p}, h={self.h}, n={self.n})"


# -- free-function facade over the context methods --------------------------


def arith(field: Field, op: str, a, b=None):
    """Dispatch one arithmetic operation by name: add, mul, inv, neg, or pow."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    if op == "neg":
        return field.neg(a)
    if op == "pow":
        return field.pow_(a, int(b))
    raise ValueError(f"unknown operation {op!r}")


def frobenius(field: Field, a, t: int):
    """a^(p^t) in the given field context."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return field.frobenius(a, t)


def rel_trace_norm(field: Field, kind: str, a, from_deg: int, to_deg: int):
    """Relative trace or norm between tower levels given by F_p-degrees."""
    if kind == "trace":
        return field.rel_trace(a, from_deg, to_deg)
    if kind == "norm":
        return field.rel_norm(a, from_deg, to_deg)
    raise ValueError(f"kind must be 'trace' or 'norm', got {kind!r}")


def subfield_test(field: Field, a, d: int) -> bool:
    """Is a an element of the subfield of F_p-degree d?"""
    return field.in_subfield(a, d)


def theta_membership(field: Field, x, base_deg: int, sub_deg: int) -> bool:
    """Is x a (p^sub_deg - 1)-th power of an element of F_{p^base_deg}^*?

    The image group is cyclic generated by w^(e*(p^sub_deg - 1)) with
    e = (p^hn - 1)/(p^base_deg - 1); its order is
    (p^base_deg - 1)/(p^gcd(sub_deg, base_deg) - 1), so sub_deg need not
    divide base_deg.
    """
    if x is None:
        raise ValueError("the power map is only asked about nonzero elements")
    return field.theta_contains(x, base_deg, sub_deg)


@lru_cache(maxsize=None)
def _build_field_cached(p: int, h: int, n: int, modulus):
    return Field(p, h, n, modulus)


def build_field(p: int, h: int, n: int, modulus=None) -> Field:
    """Field context for F_{p^{hn}}, cached so repeated calls share tables."""
    key = tuple(int(c) for c in modulus) if modulus is not None else None
    return _build_field_cached(p, h, n, key)
