"""Row backends and elimination, cross-checked against a naive dense oracle."""

import random

import pytest

from orbitcodes.linalg import rank, reduce_row, residual_rank, row_backend, rref


def dense_rank(matrix, p):
    """Gaussian elimination on plain digit lists; shares no code with rank()."""
    rows = [list(r) for r in matrix if any(r)]
    cols = len(matrix[0]) if matrix else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_pack_unpack_roundtrip(p):
    ops = row_backend(p, 9)
    rng = random.Random(100 + p)
    for _ in range(300):
        digits = [rng.randrange(p) for _ in range(9)]
        row = ops.pack(digits)
        assert ops.unpack(row) == digits
        assert ops.from_dense(ops.to_dense(row)) == row


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_backend_arithmetic(p):
    ops = row_backend(p, 8)
    rng = random.Random(200 + p)
    for _ in range(300):
        a = [rng.randrange(p) for _ in range(8)]
        b = [rng.randrange(p) for _ in range(8)]
        c = rng.randrange(p)
        assert ops.unpack(ops.add(ops.pack(a), ops.pack(b))) == [(x + y) % p for x, y in zip(a, b)]
        assert ops.unpack(ops.smul(c, ops.pack(a))) == [(c * x) % p for x in a]
    zero = ops.pack([0] * 8)
    assert zero == ops.zero
    assert ops.lowest(zero) == -1
    row = ops.pack([0, 0, 3 % p if p > 3 else 1, 0, 1, 0, 0, 0])
    assert ops.lowest(row) == 2


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_matches_dense_oracle(p):
    # regression: kept pivot rows must be rescaled to 1 before they are used to
    # cancel later rows; for p >= 3 a non-monic pivot once produced wrong ranks
    ops = row_backend(p, 7)
    rng = random.Random(300 + p)
    for _ in range(800):
        nrows = rng.randrange(1, 8)
        mat = [[rng.randrange(p) for _ in range(7)] for _ in range(nrows)]
        packed = [ops.pack(r) for r in mat]
        assert rank(packed, ops) == dense_rank(mat, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rref_canonical(p):
    ops = row_backend(p, 6)
    rng = random.Random(400 + p)
    for _ in range(250):
        mat = [[rng.randrange(p) for _ in range(6)] for _ in range(rng.randrange(1, 7))]
        piv, rows = rref([ops.pack(r) for r in mat], ops)
        assert len(piv) == dense_rank(mat, p)
        assert sorted(piv) == list(piv)
        for pos, row in zip(piv, rows):
            assert ops.digit(row, pos) == 1
            # pivot column is cleared in every other row
            for other in rows:
                if other is not row:
                    assert ops.digit(other, pos) == 0
        # scaling the input rows never changes the canonical form
        scaled = [ops.smul(rng.randrange(1, p), ops.pack(r)) if any(r) else ops.pack(r) for r in mat]
        piv2, rows2 = rref(scaled, ops)
        assert piv2 == piv and rows2 == rows


@pytest.mark.parametrize("p", [2, 3, 5])
def test_reduce_row_and_residual(p):
    ops = row_backend(p, 6)
    rng = random.Random(500 + p)
    for _ in range(200):
        mat = [[rng.randrange(p) for _ in range(6)] for _ in range(3)]
        piv, rows = rref([ops.pack(r) for r in mat], ops)
        # rows of the span reduce to zero
        coeffs = [rng.randrange(p) for _ in rows]
        combo = ops.zero
        for c, row in zip(coeffs, rows):
            combo = ops.add(combo, ops.smul(c, row))
        assert reduce_row(combo, piv, rows, ops) == ops.zero
        extra = [ops.pack([rng.randrange(p) for _ in range(6)]) for _ in range(2)]
        full = rank(list(rows) + extra, ops)
        assert residual_rank(extra, piv, rows, ops) == full - len(rows)
