"""Row arithmetic over prime fields with rows packed into Python integers.

A row is a length-``width`` coordinate vector over F_p.  For p = 2 a row is a
plain bitmask, for p = 3 it is a pair of bitmasks (ones, twos) packed into one
integer, and for larger primes it falls back to a tuple of digits.  All
elimination routines work against whichever backend the caller supplies.
"""

from __future__ import annotations

__all__ = [
    "row_backend",
    "Gf2Rows",
    "Gf3Rows",
    "GfpRows",
    "rref",
    "rank",
    "reduce_row",
    "residual_rank",
]


class Gf2Rows:
    """Rows over F_2 as bitmasks, digit i at bit i."""

    p = 2

    def __init__(self, width: int):
        self.width = width
        self.zero = 0

    def pack(self, digits) -> int:
        r = 0
        for i, d in enumerate(digits):
            if d:
                r |= 1 << i
        return r

    def unpack(self, row: int) -> list[int]:
        return [(row >> i) & 1 for i in range(self.width)]

    def from_dense(self, code: int) -> int:
        return code

    def to_dense(self, row: int) -> int:
        return row

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def neg(self, a: int) -> int:
        return a

    def smul(self, c: int, a: int) -> int:
        return a if c & 1 else 0

    def digit(self, row: int, i: int) -> int:
        return (row >> i) & 1

    def lowest(self, row: int) -> int:
        if row == 0:
            return -1
        return (row & -row).bit_length() - 1

    def shift_up(self, row: int) -> int:
        """Shift digits one position up (multiply by X), dropping the top digit."""
        return (row << 1) & ((1 << self.width) - 1)


class Gf3Rows:
    """Rows over F_3 as ones-mask | (twos-mask << width)."""

    p = 3

    def __init__(self, width: int):
        self.width = width
        self.zero = 0
        self.mask = (1 << width) - 1

    def pack(self, digits) -> int:
        m1 = m2 = 0
        for i, d in enumerate(digits):
            if d == 1:
                m1 |= 1 << i
            elif d == 2:
                m2 |= 1 << i
        return m1 | (m2 << self.width)

    def unpack(self, row: int) -> list[int]:
        w = self.width
        m1, m2 = row & self.mask, row >> w
        return [((m1 >> i) & 1) + 2 * ((m2 >> i) & 1) for i in range(w)]

    def from_dense(self, code: int) -> int:
        m1 = m2 = 0
        i = 0
        while code:
            code, d = divmod(code, 3)
            if d == 1:
                m1 |= 1 << i
            elif d == 2:
                m2 |= 1 << i
            i += 1
        return m1 | (m2 << self.width)

    def to_dense(self, row: int) -> int:
        w = self.width
        m1, m2 = row & self.mask, row >> w
        code = 0
        for i in range(w - 1, -1, -1):
            code = 3 * code + ((m1 >> i) & 1) + 2 * ((m2 >> i) & 1)
        return code

    def add(self, a: int, b: int) -> int:
        w = self.width
        mask = self.mask
        a1, a2 = a & mask, a >> w
        b1, b2 = b & mask, b >> w
        na, nb = ~(a1 | a2), ~(b1 | b2)
        r1 = ((a1 & nb) | (b1 & na) | (a2 & b2)) & mask
        r2 = ((a2 & nb) | (b2 & na) | (a1 & b1)) & mask
        return r1 | (r2 << w)

    def neg(self, a: int) -> int:
        w = self.width
        return (a >> w) | ((a & self.mask) << w)

    def smul(self, c: int, a: int) -> int:
        c %= 3
        if c == 0:
            return 0
        return a if c == 1 else self.neg(a)

    def digit(self, row: int, i: int) -> int:
        return ((row >> i) & 1) + 2 * ((row >> (self.width + i)) & 1)

    def lowest(self, row: int) -> int:
        both = (row | (row >> self.width)) & self.mask
        if both == 0:
            return -1
        return (both & -both).bit_length() - 1

    def shift_up(self, row: int) -> int:
        w = self.width
        m1 = ((row & self.mask) << 1) & self.mask
        m2 = ((row >> w) << 1) & self.mask
        return m1 | (m2 << w)


class GfpRows:
    """Generic fallback: rows as tuples of digits mod p."""

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self.zero = (0,) * width

    def pack(self, digits):
        r = list(digits)
        assert len(r) == self.width
        return tuple(d % self.p for d in r)

    def unpack(self, row):
        return list(row)

    def from_dense(self, code: int):
        out = []
        for _ in range(self.width):
            code, d = divmod(code, self.p)
            out.append(d)
        return tuple(out)

    def to_dense(self, row) -> int:
        code = 0
        for d in reversed(row):
            code = code * self.p + d
        return code

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def smul(self, c: int, a):
        p = self.p
        c %= p
        return tuple((c * x) % p for x in a)

    def digit(self, row, i: int) -> int:
        return row[i]

    def lowest(self, row) -> int:
        for i, d in enumerate(row):
            if d:
                return i
        return -1

    def shift_up(self, row):
        return (0,) + row[:-1]


def row_backend(p: int, width: int):
    """Pick the fastest row representation for F_p rows of this width."""
    if p == 2:
        return Gf2Rows(width)
    if p == 3:
        return Gf3Rows(width)
    return GfpRows(p, width)


def rref(rows, ops):
    """Reduced row echelon form.

    Returns (pivots, reduced) with zero rows dropped, pivot columns strictly
    increasing and pivot entries normalized to 1.  The result is the canonical
    basis of the row span.
    """
    p = ops.p
    work: list = []
    pivots: list[int] = []
    for row in rows:
        for pos, prow in zip(pivots, work):
            c = ops.digit(row, pos)
            if c:
                row = ops.add(row, ops.smul(p - c, prow))
        pos = ops.lowest(row)
        if pos < 0:
            continue
        c = ops.digit(row, pos)
        if c != 1:
            row = ops.smul(pow(c, -1, p), row)
        # clear this column in the rows already kept
        for i, prow in enumerate(work):
            cc = ops.digit(prow, pos)
            if cc:
                work[i] = ops.add(prow, ops.smul(p - cc, row))
        work.append(row)
        pivots.append(pos)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [pivots[i] for i in order], [work[i] for i in order]


def rank(rows, ops) -> int:
    """Rank via forward elimination only."""
    p = ops.p
    pivots: list[int] = []
    work: list = []
    for row in rows:
        for pos, prow in zip(pivots, work):
            c = ops.digit(row, pos)
            if c:
                row = ops.add(row, ops.smul(p - c, prow))
        pos = ops.lowest(row)
        if pos >= 0:
            c = ops.digit(row, pos)
            if c != 1:
                # kept rows must be monic for the subtraction above to cancel
                row = ops.smul(pow(c, -1, p), row)
            pivots.append(pos)
            work.append(row)
    return len(work)


def reduce_row(row, pivots, prows, ops):
    """Reduce one row against an echelon basis; zero result means membership."""
    p = ops.p
    for pos, prow in zip(pivots, prows):
        c = ops.digit(row, pos)
        if c:
            row = ops.add(row, ops.smul(p - c, prow))
    return row


def residual_rank(rows, pivots, prows, ops) -> int:
    """Rank of ``rows`` modulo the span of an echelon basis."""
    residuals = []
    for row in rows:
        r = reduce_row(row, pivots, prows, ops)
        if r != ops.zero:
            residuals.append(r)
    return rank(residuals, ops)
