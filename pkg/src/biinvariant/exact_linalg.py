"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always in lowest terms, positive
denominator).  Matrices are immutable row-major grids; subspaces are stored by
a basis in reduced row-echelon form so that equal subspaces compare equal.

Elimination is fraction-free: rows are scaled to primitive integer vectors and
combined with integer cross-multiplication, only converting back to rationals
for the final normalization.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple of Fraction


def to_scalar(x) -> Fraction:
    """Exact conversion; accepts ints, Fractions and strings like ``"-3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(to_scalar(x) for x in xs)


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


class Mat:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(to_scalar(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence], rows: int | None = None) -> "Mat":
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls.from_rows(cols, rows).T

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, (Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.rows else ()

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return Mat(self.rows, other.cols,
                       (dot(self.row(i), c) for i in range(self.rows) for c in ocols))
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def _zip(self, other, op):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Mat(self.rows, self.cols, (op(a, b) for a, b in zip(self.entries, other.entries)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return Mat(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, s) -> "Mat":
        s = to_scalar(s)
        return Mat(self.rows, self.cols, (s * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def vstack(mats: Sequence[Mat], cols: int | None = None) -> Mat:
    if cols is None:
        cols = mats[0].cols if mats else 0
    rows = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch in vstack")
        rows.extend(m.row(i) for i in range(m.rows))
    return Mat.from_rows(rows, cols)


def block_diag(a: Mat, b: Mat) -> Mat:
    n = a.rows + b.rows
    m = a.cols + b.cols
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(a.rows):
        out[i][:a.cols] = a.row(i)
    for i in range(b.rows):
        out[a.rows + i][a.cols:] = b.row(i)
    return Mat.from_rows(out, m)


# ---------------------------------------------------------------------------
# fraction-free elimination


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to a primitive integer row (same span)."""
    den = reduce(lcm, (x.denominator for x in row if x), 1)
    ints = [int(x * den) for x in row]
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _echelon_int(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward + backward elimination on integer rows.

    Each update is ``r_i <- p * r_i - a * r_piv`` followed by division by the
    row content, so entries stay integral without any rational arithmetic and
    rows that already vanish in the pivot column are left untouched.
    """
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        # smallest pivot keeps coefficient growth down
        k = min((i for i in range(r, len(rows)) if rows[i][c]), key=lambda i: abs(rows[i][c]))
        rows[r], rows[k] = rows[k], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(len(rows)):
            if i == r:
                continue
            a = rows[i][c]
            if not a:
                continue
            g = gcd(p, a)
            sp, sa = p // g, a // g
            new = [sp * x - sa * y for x, y in zip(rows[i], prow)]
            cont = reduce(gcd, new, 0)
            if cont > 1:
                new = [x // cont for x in new]
            rows[i] = new
        pivots.append(c)
        r += 1
        rows[r:] = [row for row in rows[r:] if any(row)]
    return rows[:r], pivots


def rref(m: Mat) -> tuple[Mat, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns and rank.

    The returned matrix has the same shape as ``m`` (zero rows at the bottom).
    """
    int_rows = [_integer_row(m.row(i)) for i in range(m.rows)]
    rows, pivots = _echelon_int(int_rows, m.cols)
    out = []
    for row, c in zip(rows, pivots):
        p = row[c]
        out.append([Fraction(x, p) for x in row])
    out.extend([[Fraction(0)] * m.cols for _ in range(m.rows - len(out))])
    return Mat.from_rows(out, m.cols), tuple(pivots), len(pivots)


def rank(m: Mat) -> int:
    return rref(m)[2]


def bareiss_det(m: Mat) -> Fraction:
    """Determinant via classical Bareiss elimination (exact division by the previous pivot)."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    den = reduce(lcm, (x.denominator for x in m.entries), 1)
    a = [[int(x * den) for x in m.row(i)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den ** n)


def inverse(m: Mat) -> Mat:
    """Exact inverse; raises ``ValueError`` if singular."""
    n = m.rows
    if m.cols != n:
        raise ValueError("inverse of non-square matrix")
    aug = Mat.from_rows([list(m.row(i)) + list(unit(n, i)) for i in range(n)], 2 * n)
    red, pivots, r = rref(aug)
    if pivots[:n] != tuple(range(n)) or r < n:
        raise ValueError("matrix is singular")
    return Mat.from_rows([red.row(i)[n:] for i in range(n)], n)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim; ``basis`` rows are in reduced row-echelon form."""

    ambient_dim: int
    basis: Mat

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vectors:
            return cls.zero(ambient_dim)
        red, _, r = rref(Mat.from_rows(vectors, ambient_dim))
        return cls(ambient_dim, Mat.from_rows([red.row(i) for i in range(r)], ambient_dim))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Mat.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Mat.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> list[Vector]:
        return [self.basis.row(i) for i in range(self.dim)]

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.vectors)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        return all(contains(other, v) for v in self.vectors)


def kernel_basis(m: Mat) -> Subspace:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    red, pivots, r = rref(m)
    pivot_set = set(pivots)
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -red[i, f]
        vectors.append(x)
    return Subspace.span(vectors, m.cols)


def solve(m: Mat, b: Sequence) -> Vector | None:
    """A particular solution of ``m x = b`` with every free variable set to 0, or None."""
    b = vec(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = Mat.from_rows([list(m.row(i)) + [b[i]] for i in range(m.rows)], m.cols + 1)
    red, pivots, r = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = red[i, m.cols]
    return tuple(x)


def span_union(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    return Subspace.span(a.vectors + b.vectors, a.ambient_dim)


def contains(sub: Subspace, v: Sequence) -> bool:
    v = vec(v)
    if len(v) != sub.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {sub.ambient_dim}")
    if not any(v):
        return True
    # reduce v against the rref basis
    w = list(v)
    for row, p in zip(sub.vectors, sub.pivots):
        if w[p]:
            a = w[p]
            w = [x - a * y for x, y in zip(w, row)]
    return not any(w)


@dataclass(frozen=True)
class QuotientSpace:
    """Quotient Q^n / sub with projection ``q`` and a linear section.

    The complement is spanned by the coordinate vectors of the non-pivot
    columns of ``sub``; ``section`` embeds the quotient onto that complement.
    """

    source_dim: int
    quotient_dim: int
    q: Mat
    section: Mat
    kernel: Subspace

    def project(self, v: Sequence) -> Vector:
        return self.q.apply(vec(v))

    def lift(self, v: Sequence) -> Vector:
        return self.section.apply(vec(v))


def quotient_data(sub: Subspace) -> QuotientSpace:
    n = sub.ambient_dim
    pivots = sub.pivots
    free = [j for j in range(n) if j not in set(pivots)]
    # v = sum_i v[p_i] * b_i + (complement part); the complement coordinates of
    # v are v[f] - sum_i v[p_i] * b_i[f].
    rows = []
    for f in free:
        row = [Fraction(0)] * n
        row[f] = Fraction(1)
        for b, p in zip(sub.vectors, pivots):
            row[p] -= b[f]
        rows.append(row)
    q = Mat.from_rows(rows, n)
    section = Mat.from_cols([unit(n, f) for f in free], n) if free else Mat.zeros(n, 0)
    return QuotientSpace(n, len(free), q, section, sub)
