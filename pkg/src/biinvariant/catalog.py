"""Named Lie algebras with exact structure constants and matrix realizations.

Spec strings follow the grammar::

    spec  := NAME [ "(" arg ("," arg)* ")" ]
    arg   := spec | RATIONAL | "[" [arg ("," arg)*] "]"

e.g. ``heisenberg(5)``, ``direct_sum(su(2), abelian(2))``,
``semidirect(abelian(1), 2, [[[1,0],[0,-1]]])``.  A bare ``NAMEdigits`` such
as ``su2`` or ``so3`` is shorthand for ``NAME(digits)``.

Basis conventions
-----------------
abelian(d)          e_i, all brackets zero; realized by diagonal units.
heisenberg(2n+1)    x_1..x_n, y_1..y_n, z with [x_i, y_i] = z.
aff(1)              H, E with [H, E] = E.
su(2)               [e0,e1]=e2, [e1,e2]=e0, [e2,e0]=e1; realized by -i/2 Pauli matrices.
su(n), n >= 3       i(E_jj - E_j+1,j+1), then E_jk - E_kj, then i(E_jk + E_kj) (j < k).
sl(2)               H, E, F.
so(n)               E_ij - E_ji, i < j lexicographic.
u(n)                su(n) + span{i Id}.
gl(n)               E_ij, lexicographic.
strictly_upper_triangular(n)   E_ij, i < j lexicographic.

Complex matrices A + iB are realized as the real block matrix [[A, -B], [B, A]].
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .exact_linalg import Mat, block_diag, rank
from .lie_algebra import (
    LieAlgebra,
    abelianization,
    direct_sum as lie_direct_sum,
    from_matrices,
)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple
    algebra: LieAlgebra
    realization: tuple[Mat, ...] | None
    expected_ab_dim: int
    provenance: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def unit_matrix(n: int, i: int, j: int, s=1) -> Mat:
    return Mat(n, n, (Fraction(s) if (a, b) == (i, j) else Fraction(0)
                      for a in range(n) for b in range(n)))


def realify(re_part: Mat, im_part: Mat) -> Mat:
    n = re_part.rows
    rows = []
    for i in range(n):
        rows.append(list(re_part.row(i)) + [-x for x in im_part.row(i)])
    for i in range(n):
        rows.append(list(im_part.row(i)) + list(re_part.row(i)))
    return Mat.from_rows(rows, 2 * n)


def realization_mismatches(L: LieAlgebra, mats: Sequence[Mat]) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` where the commutator differs from ``sum_k c_ijk R_k``."""
    bad = []
    for i, j in combinations(range(L.dim), 2):
        comm = mats[i] @ mats[j] - mats[j] @ mats[i]
        expect = Mat.zeros(*mats[0].shape)
        for k, c in enumerate(L.structure[i][j]):
            if c:
                expect = expect + mats[k].scale(c)
        if comm != expect:
            bad.append((i, j))
    return bad


def _entry(name, params, L, mats, expected, provenance):
    L = LieAlgebra(L.dim, L.structure, name)
    L.validate()
    if mats is not None:
        mats = tuple(mats)
        bad = realization_mismatches(L, mats)
        if bad:
            raise CatalogError(f"{name}: realization disagrees with structure constants at {bad}")
    actual = abelianization(L).quotient_dim
    if expected is None:
        expected = actual
    elif actual != expected:
        raise CatalogError(f"{name}: abelianization has dim {actual}, documented {expected}")
    return CatalogEntry(name, tuple(params), L, mats, expected, provenance)


def _need(cond, msg):
    if not cond:
        raise CatalogError(msg)


def abelian(d: int) -> CatalogEntry:
    _need(isinstance(d, int) and d >= 0, "abelian(d) needs d >= 0")
    L = LieAlgebra(d, [[[0] * d for _ in range(d)] for _ in range(d)])
    mats = [unit_matrix(d, i, i) for i in range(d)]
    return _entry(f"abelian({d})", (d,), L, mats, d, "all brackets vanish")


def heisenberg(dim: int) -> CatalogEntry:
    _need(isinstance(dim, int) and dim >= 3 and dim % 2 == 1, "heisenberg(m) needs odd m >= 3")
    n = (dim - 1) // 2
    L = LieAlgebra.from_brackets(dim, {(i, n + i): {dim - 1: 1} for i in range(n)})
    size = n + 2
    mats = ([unit_matrix(size, 0, i + 1) for i in range(n)]
            + [unit_matrix(size, i + 1, n + 1) for i in range(n)]
            + [unit_matrix(size, 0, n + 1)])
    return _entry(f"heisenberg({dim})", (dim,), L, mats, 2 * n, "[g,g] = span{z}")


def aff(n: int = 1) -> CatalogEntry:
    _need(n == 1, "only aff(1) is available")
    L = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    mats = [unit_matrix(2, 0, 0), unit_matrix(2, 0, 1)]
    return _entry("aff(1)", (1,), L, mats, 1, "[g,g] = span{E}")


def _su2() -> CatalogEntry:
    L = LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})
    h = Fraction(1, 2)
    z = Mat.zeros(2, 2)
    # e_k = -(i/2) sigma_k
    s0 = realify(z, Mat.from_rows([[0, -h], [-h, 0]]))
    s1 = realify(Mat.from_rows([[0, -h], [h, 0]]), z)
    s2 = realify(z, Mat.from_rows([[-h, 0], [0, h]]))
    return _entry("su(2)", (2,), L, [s0, s1, s2], 0, "simple")


def su(n: int) -> CatalogEntry:
    _need(isinstance(n, int) and n >= 2, "su(n) needs n >= 2")
    if n == 2:
        return _su2()
    z = Mat.zeros(n, n)
    mats = []
    for j in range(n - 1):
        mats.append(realify(z, unit_matrix(n, j, j) - unit_matrix(n, j + 1, j + 1)))
    for j, k in combinations(range(n), 2):
        mats.append(realify(unit_matrix(n, j, k) - unit_matrix(n, k, j), z))
    for j, k in combinations(range(n), 2):
        mats.append(realify(z, unit_matrix(n, j, k) + unit_matrix(n, k, j)))
    return _entry(f"su({n})", (n,), from_matrices(mats), mats, 0, "simple")


def sl(n: int) -> CatalogEntry:
    _need(n == 2, "only sl(2) is available")
    mats = [Mat.from_rows([[1, 0], [0, -1]]), unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)]
    return _entry("sl(2)", (2,), from_matrices(mats), mats, 0, "simple")


def so(n: int) -> CatalogEntry:
    _need(isinstance(n, int) and n >= 3, "so(n) needs n >= 3")
    mats = [unit_matrix(n, i, j) - unit_matrix(n, j, i) for i, j in combinations(range(n), 2)]
    return _entry(f"so({n})", (n,), from_matrices(mats), mats, 0, "semisimple for n >= 3")


def u(n: int) -> CatalogEntry:
    _need(isinstance(n, int) and n >= 1, "u(n) needs n >= 1")
    center = realify(Mat.zeros(n, n), Mat.identity(n))
    u1 = _entry("u(1)", (1,), LieAlgebra(1, [[[0]]]), [center], 1, "abelian")
    if n == 1:
        return u1
    return _sum(su(n), u1, f"u({n})", (n,), 1, "su(n) + center")


def gl(n: int) -> CatalogEntry:
    _need(isinstance(n, int) and n >= 1, "gl(n) needs n >= 1")
    mats = [unit_matrix(n, i, j) for i in range(n) for j in range(n)]
    return _entry(f"gl({n})", (n,), from_matrices(mats), mats, 1, "[gl,gl] = sl")


def strictly_upper_triangular(n: int) -> CatalogEntry:
    _need(isinstance(n, int) and n >= 1, "strictly_upper_triangular(n) needs n >= 1")
    mats = [unit_matrix(n, i, j) for i, j in combinations(range(n), 2)]
    L = from_matrices(mats) if mats else LieAlgebra(0, ())
    return _entry(f"strictly_upper_triangular({n})", (n,), L, mats, max(n - 1, 0),
                  "[n,n] = entries above the superdiagonal")


def _sum(a: CatalogEntry, b: CatalogEntry, name, params, expected, provenance) -> CatalogEntry:
    L = lie_direct_sum(a.algebra, b.algebra)
    mats = None
    if a.realization is not None and b.realization is not None:
        za = Mat.zeros(*(a.realization[0].shape if a.realization else (0, 0)))
        zb = Mat.zeros(*(b.realization[0].shape if b.realization else (0, 0)))
        mats = ([block_diag(m, zb) for m in a.realization]
                + [block_diag(za, m) for m in b.realization])
    return _entry(name, params, L, mats, expected, provenance)


def direct_sum(a: CatalogEntry, b: CatalogEntry) -> CatalogEntry:
    _need(isinstance(a, CatalogEntry) and isinstance(b, CatalogEntry),
          "direct_sum takes two algebra specs")
    return _sum(a, b, f"direct_sum({a.name},{b.name})", (a.name, b.name),
                a.expected_ab_dim + b.expected_ab_dim, "abelianizations add")


def semidirect(base: CatalogEntry, d: int, actions: Sequence) -> CatalogEntry:
    """``base`` acting on ``Q^d``; ``actions[i]`` is the matrix of basis element ``i``.

    Basis: the base basis followed by ``v_0..v_{d-1}``; ``[e_i, v_a] = actions[i] v_a``.
    """
    _need(isinstance(base, CatalogEntry), "semidirect needs a base algebra spec")
    _need(isinstance(d, int) and d >= 0, "semidirect needs d >= 0")
    g = base.algebra
    m = g.dim
    try:
        acts = [a if isinstance(a, Mat) else Mat.from_rows(a, d) for a in actions]
    except (ValueError, TypeError) as exc:
        raise CatalogError(f"bad action matrices: {exc}") from None
    _need(len(acts) == m, f"need {m} action matrices, got {len(acts)}")
    _need(all(A.shape == (d, d) for A in acts), f"action matrices must be {d}x{d}")
    for i, j in combinations(range(m), 2):
        comm = acts[i] @ acts[j] - acts[j] @ acts[i]
        rhs = Mat.zeros(d, d)
        for k, c in enumerate(g.structure[i][j]):
            if c:
                rhs = rhs + acts[k].scale(c)
        _need(comm == rhs, f"actions fail the representation property at ({i},{j})")
    n = m + d
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(m):
        for j in range(m):
            c[i][j][:m] = g.structure[i][j]
        for a in range(d):
            col = acts[i].col(a)
            c[i][m + a][m:] = col
            c[m + a][i][m:] = [-x for x in col]
    L = LieAlgebra(n, c)
    size = d + 1
    mats = []
    for A in acts:
        mats.append(Mat.from_rows([list(A.row(r)) + [0] for r in range(d)] + [[0] * size], size))
    for a in range(d):
        mats.append(unit_matrix(size, a, d))
    if mats and rank(Mat.from_cols([x.entries for x in mats])) < n:
        mats = None  # action not faithful
    return _entry(f"semidirect({base.name},{d})", (base.name, d), L, mats, None,
                  "computed from derived subalgebra")


BUILDERS: dict[str, Callable] = {
    "abelian": abelian,
    "heisenberg": heisenberg,
    "aff": aff,
    "su": su,
    "sl": sl,
    "so": so,
    "u": u,
    "gl": gl,
    "strictly_upper_triangular": strictly_upper_triangular,
    "sut": strictly_upper_triangular,
    "direct_sum": direct_sum,
    "semidirect": semidirect,
}


def build(name: str, *params) -> CatalogEntry:
    if name not in BUILDERS:
        raise CatalogError(f"unknown algebra {name!r}; known: {sorted(BUILDERS)}")
    try:
        return BUILDERS[name](*params)
    except TypeError as exc:
        raise CatalogError(f"{name}: bad parameters {params}: {exc}") from None


# ---------------------------------------------------------------------------
# spec-string parser

_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[(),\[\]]))")


def _size_parameter(name: str, args) -> int | None:
    """The ``n`` a size cap applies to; heisenberg(2n+1) is measured by ``n``."""
    if name not in _SIZED or not args or not isinstance(args[0], int):
        return None
    return (args[0] - 1) // 2 if name == "heisenberg" else args[0]


_SIZED = {"abelian", "heisenberg", "su", "so", "u", "gl", "strictly_upper_triangular", "sut"}


class _Parser:
    def __init__(self, text: str, max_param: int | None = None):
        self.text = text
        self.max_param = max_param
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise CatalogError(f"unexpected character at position {pos} in {self.text!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise CatalogError(f"expected {value or 'token'} at position {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        out = self.arg()
        if self.peek()[0] is not None:
            raise CatalogError(f"trailing input at position {self.peek()[2]} in {self.text!r}")
        return out

    def arg(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            x = Fraction(value)
            return int(x) if x.denominator == 1 else x
        if value == "[":
            self.take("[")
            items = []
            if self.peek()[1] != "]":
                items.append(self.arg())
                while self.peek()[1] == ",":
                    self.take(",")
                    items.append(self.arg())
            self.take("]")
            return items
        if kind == "name":
            return self.spec()
        raise CatalogError(f"unexpected {value!r} at position {pos} in {self.text!r}")

    def spec(self):
        _, name, _ = self.take()
        args = []
        if self.peek()[1] == "(":
            self.take("(")
            if self.peek()[1] != ")":
                args.append(self.arg())
                while self.peek()[1] == ",":
                    self.take(",")
                    args.append(self.arg())
            self.take(")")
        elif name not in BUILDERS:
            m = re.fullmatch(r"([A-Za-z_]+?)(\d+)", name)
            if m and m.group(1) in BUILDERS:
                name, args = m.group(1), [int(m.group(2))]
        size = _size_parameter(name, args)
        if self.max_param is not None and size is not None and size > self.max_param:
            raise CatalogError(f"{name}: parameter n = {size} exceeds the cap n <= {self.max_param}")
        return build(name, *args)


def parse_spec(text: str, max_param: int | None = None) -> CatalogEntry:
    """Parse a catalog spec; ``max_param`` caps the size parameter of every builder."""
    return _Parser(text, max_param).parse()


def standard_catalog() -> list[CatalogEntry]:
    """The parameter range exercised by the acceptance suite (without random sums)."""
    entries = [abelian(d) for d in range(0, 7)]
    entries += [heisenberg(m) for m in (3, 5, 7)]
    entries += [aff(1), sl(2)]
    entries += [so(n) for n in (3, 4, 5)]
    entries += [su(n) for n in (2, 3, 4)]
    entries += [u(n) for n in (1, 2, 3, 4)]
    entries += [gl(n) for n in (2, 3, 4)]
    entries += [strictly_upper_triangular(n) for n in (3, 4, 5)]
    return entries
