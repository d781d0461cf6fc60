"""Subspaces of a field tower, canonically represented and compared.

A subspace is stored by the reduced row echelon form of its F_p coordinate
matrix, so two subspaces over the same ground field are equal iff their row
tuples are identical.  The ground field F_{p^g} is recorded as ``ground_deg``
(degree g over F_p, default h); scalar closure is handled at span time, after
which all linear algebra runs blockwise over F_p.
"""

from __future__ import annotations

from .field import Field
from .linalg import reduce_row, residual_rank, row_backend, rref

__all__ = [
    "Subspace",
    "span",
    "span_canonical",
    "intersect_dim",
    "intersect",
    "subspace_distance",
    "scalar_shift",
    "orthogonal_complement",
]


class Subspace:
    """An F_{p^g}-subspace of F_{p^{hn}} in canonical echelon form."""

    __slots__ = ("field", "ground_deg", "pivots", "rows", "_logs")

    def __init__(self, field: Field, ground_deg: int, pivots, rows):
        self.field = field
        self.ground_deg = ground_deg
        self.pivots = tuple(pivots)
        self.rows = tuple(rows)
        self._logs = None
        if len(self.rows) % ground_deg:
            raise ValueError("row count is not a multiple of the ground degree; span not closed")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field is other.field
            and self.ground_deg == other.ground_deg
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((id(self.field), self.ground_deg, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ground_deg={self.ground_deg}, {self.field!r})"

    # -- basic queries -------------------------------------------------------

    @property
    def dim(self) -> int:
        """Dimension over the ground field F_{p^g}."""
        return len(self.rows) // self.ground_deg

    @property
    def fp_dim(self) -> int:
        return len(self.rows)

    def contains(self, a) -> bool:
        row = self.field.packed(a)
        return reduce_row(row, self.pivots, self.rows, self.field.rowops) == self.field.rowops.zero

    def basis_logs(self) -> tuple:
        """Logs of the canonical F_p-basis rows (each row is a field element)."""
        if self._logs is None:
            f = self.field
            self._logs = tuple(f.from_packed(r) for r in self.rows)
        return self._logs

    def ground_basis_logs(self) -> tuple:
        """Logs of a basis over the ground field, extracted greedily from the rows."""
        f = self.field
        g = self.ground_deg
        step = f.subfield_exponent(g)
        ops = f.rowops
        kept = []
        piv: list = []
        rws: list = []
        for lg in self.basis_logs():
            row = f.packed(lg)
            if reduce_row(row, piv, rws, ops) == ops.zero:
                continue
            kept.append(lg)
            closure = [f.packed((lg + j * step) % f.N) for j in range(g)]
            piv, rws = rref(rws + closure, ops)
        if len(kept) != self.dim:
            raise AssertionError("ground basis extraction failed")
        return tuple(kept)

    # -- derived subspaces ---------------------------------------------------

    def shift(self, alpha) -> "Subspace":
        """The scalar multiple alpha * U (alpha nonzero)."""
        f = self.field
        if alpha is None:
            raise ValueError("scalar shift by zero")
        rows = [f.packed((lg + alpha) % f.N) for lg in self.basis_logs()]
        piv, rws = rref(rows, f.rowops)
        return Subspace(f, self.ground_deg, piv, rws)

    def frobenius_image(self, t: int = 1) -> "Subspace":
        """Image under x -> x^(p^t) (a field automorphism, so again a subspace)."""
        f = self.field
        pw = pow(f.p, t, f.N)
        rows = [f.packed((lg * pw) % f.N) for lg in self.basis_logs()]
        piv, rws = rref(rows, f.rowops)
        return Subspace(f, self.ground_deg, piv, rws)

    def orthogonal(self) -> "Subspace":
        """Orthogonal complement w.r.t. the form (a, b) -> Tr_{q^n/q}(ab).

        Requires a ground degree of h (an F_q-linear subspace).
        """
        f = self.field
        if self.ground_deg != f.h:
            raise ValueError("orthogonal complement requires an F_q-linear subspace")
        m, p = f.m, f.p
        blogs = self.basis_logs()
        width = len(blogs) * m
        cond_ops = row_backend(p, width + m)
        aug_rows = []
        for i in range(m):
            digits: list[int] = []
            for lg in blogs:
                tr = f.rel_trace((i + lg) % f.N, m, f.h)
                digits.extend(f.coords(tr))
            aug = [0] * m
            aug[i] = 1
            aug_rows.append(cond_ops.pack(digits + aug))
        # eliminate on the condition block; rows whose condition part vanished
        # carry kernel combinations in the identity block
        _, reduced = rref(aug_rows, cond_ops)
        kernel_logs = []
        for row in reduced:
            digits = cond_ops.unpack(row)
            if any(digits[:width]):
                continue
            kernel_logs.append(f.from_coords(digits[width:]))
        return span(f, kernel_logs, ground_deg=self.ground_deg)

    # -- structure ----------------------------------------------------------

    def stabilizer_degree(self) -> int:
        """Largest d (over F_p) with F_{p^d}^* * U = U; a multiple of ground_deg dividing hn."""
        f = self.field
        g = self.ground_deg
        if self.dim == 0:
            return f.m
        cands = sorted(
            (d for d in range(g, f.m + 1) if f.m % d == 0 and d % g == 0),
            reverse=True,
        )
        for d in cands:
            if d == g:
                return d
            if self.fp_dim % d:
                # an F_{p^d}-closed space has F_p-dimension divisible by d
                continue
            gen = f.subfield_exponent(d)
            if self.shift(gen) == self:
                return d
        return g

    def is_generic(self) -> bool:
        """True iff no scalar multiple of U lies inside a proper subfield."""
        f = self.field
        g = self.ground_deg
        logs = self.basis_logs()
        if not logs:
            return True
        for d in range(g, f.m):
            if f.m % d or d % g or d < g * self.dim:
                continue
            step = f.subfield_exponent(d)
            res = {lg % step for lg in logs}
            if len(res) == 1:
                return False
        return True

    # -- enumeration ----------------------------------------------------------

    def element_logs(self) -> list:
        """Logs of all nonzero elements (p^fp_dim - 1 of them)."""
        f = self.field
        ops = f.rowops
        packed = [ops.zero]
        for row in self.rows:
            scaled = [ops.smul(c, row) for c in range(1, f.p)]
            packed += [ops.add(e, s) for e in packed for s in scaled]
        return [f.from_packed(r) for r in packed if r != ops.zero]

    def point_classes(self) -> list:
        """Sorted residues of element logs modulo the ground projective period."""
        f = self.field
        period = f.N // (f.p**self.ground_deg - 1)
        return sorted({lg % period for lg in self.element_logs()})

    # -- serialization ---------------------------------------------------------

    def to_lines(self) -> list[str]:
        f = self.field
        return [f.fmt(lg) for lg in self.ground_basis_logs()]


def span(field: Field, gens, ground_deg: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``gens`` over F_{p^ground_deg}."""
    g = field.h if ground_deg is None else ground_deg
    if g < 1 or field.m % g != 0:
        raise ValueError(f"ground degree {g} does not divide {field.m}")
    step = field.subfield_exponent(g)
    rows = []
    for a in gens:
        if a is None:
            continue
        rows.extend(field.packed((a + j * step) % field.N) for j in range(g))
    piv, rws = rref(rows, field.rowops)
    return Subspace(field, g, piv, rws)


def _check_comparable(u: Subspace, v: Subspace) -> None:
    if u.field is not v.field:
        raise ValueError("subspaces live in different field contexts")
    if u.ground_deg != v.ground_deg:
        raise ValueError("subspaces have different ground fields")


def intersect_dim(u: Subspace, v: Subspace) -> int:
    """dim(U ∩ V) over the common ground field, via the rank of stacked bases."""
    _check_comparable(u, v)
    ops = u.field.rowops
    r = len(u.rows) + residual_rank(v.rows, u.pivots, u.rows, ops)
    fp_meet = u.fp_dim + v.fp_dim - r
    return fp_meet // u.ground_deg


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Basis of U ∩ V by eliminating a doubled-width matrix.

    Rows (b | b) for b in U's basis and (c | 0) for c in V's basis are reduced
    together; surviving rows supported only on the right block have right
    halves spanning the intersection.
    """
    _check_comparable(u, v)
    f = u.field
    m = f.m
    ops = f.rowops
    wide = row_backend(f.p, 2 * m)
    rows = []
    for r in u.rows:
        d = ops.unpack(r)
        rows.append(wide.pack(d + d))
    zeros = [0] * m
    for r in v.rows:
        rows.append(wide.pack(ops.unpack(r) + zeros))
    piv, rws = rref(rows, wide)
    meet = []
    for pos, r in zip(piv, rws):
        if pos >= m:
            meet.append(ops.pack(wide.unpack(r)[m:]))
    piv2, rws2 = rref(meet, ops)
    return Subspace(f, u.ground_deg, piv2, rws2)


def subspace_distance(u: Subspace, v: Subspace) -> int:
    """Lattice distance dim U + dim V - 2 dim(U ∩ V) over the ground field."""
    return u.dim + v.dim - 2 * intersect_dim(u, v)


def span_canonical(field: Field, gens, ground_deg: int | None = None) -> Subspace:
    """Alias of :func:`span`; the result is always in canonical form."""
    return span(field, gens, ground_deg)


def scalar_shift(alpha, u: Subspace) -> Subspace:
    """The subspace alpha * U for a nonzero scalar alpha (given by log)."""
    if alpha is None:
        raise ValueError("shift by zero is not a subspace map")
    return u.shift(alpha)


def orthogonal_complement(u: Subspace) -> Subspace:
    """The trace-form orthogonal complement of U."""
    return u.orthogonal()
