"""Finite-dimensional Lie algebras given by rational structure constants.

``structure[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exact_linalg import (
    Mat,
    QuotientSpace,
    Subspace,
    Vector,
    inverse,
    quotient_data,
    rank,
    solve,
    to_scalar,
    unit,
    vec,
)

Triple = tuple[int, int, int]


class JacobiError(ValueError):
    def __init__(self, violations: list[Triple]):
        self.violations = violations
        super().__init__(f"Jacobi identity fails for triples {violations[:5]}"
                         + (" ..." if len(violations) > 5 else ""))


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    structure: tuple  # n x n x n nested tuples of Fraction
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        c = tuple(tuple(tuple(to_scalar(x) for x in cij) for cij in ci) for ci in self.structure)
        if len(c) != n or any(len(ci) != n or any(len(cij) != n for cij in ci) for ci in c):
            raise ValueError(f"structure tensor must be {n}x{n}x{n}")
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(f"structure constants not antisymmetric at ({i},{j},{k})")
        object.__setattr__(self, "structure", c)

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                      name: str | None = None, check: bool = False) -> "LieAlgebra":
        """Build from the brackets ``[e_i, e_j] = sum coeffs[k] e_k`` for listed pairs.

        Only one of ``(i, j)`` / ``(j, i)`` needs to be given; the other is
        filled in by antisymmetry.
        """
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i},{j}) out of range for dim {dim}")
            if i == j:
                if any(to_scalar(v) for v in coeffs.values()):
                    raise ValueError(f"[e_{i}, e_{i}] must vanish")
                continue
            for k, v in coeffs.items():
                if not 0 <= k < dim:
                    raise ValueError(f"coefficient index {k} out of range for dim {dim}")
                v = to_scalar(v)
                c[i][j][k] = v
                c[j][i][k] = -v
        L = cls(dim, c, name)
        if check:
            L.validate()
        return L

    def validate(self) -> "LieAlgebra":
        bad = check_jacobi(self)
        if bad:
            raise JacobiError(bad)
        return self

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.structure[i][j]

    def nonzero_brackets(self):
        """Yield ``(i, j, coeffs)`` for ``i < j`` with a nonzero bracket."""
        for i, j in combinations(range(self.dim), 2):
            cij = self.structure[i][j]
            if any(cij):
                yield i, j, cij

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    x, y = vec(x), vec(y)
    if len(x) != L.dim or len(y) != L.dim:
        raise ValueError(f"vectors must have length {L.dim}")
    out = [Fraction(0)] * L.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj or i == j:
                continue
            s = xi * yj
            for k, ck in enumerate(L.structure[i][j]):
                if ck:
                    out[k] += s * ck
    return tuple(out)


def check_jacobi(L: LieAlgebra) -> list[Triple]:
    """Triples ``i < j < k`` where ``[[e_i,e_j],e_k] + cyclic`` is nonzero."""
    n = L.dim
    bad = []
    for i, j, k in combinations(range(n), 3):
        total = [Fraction(0)] * n
        for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
            inner = L.structure[a][b]
            for m, cm in enumerate(inner):
                if cm:
                    for t, ct in enumerate(L.structure[m][d]):
                        if ct:
                            total[t] += cm * ct
        if any(total):
            bad.append((i, j, k))
    return bad


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    return Subspace.span([cij for _, _, cij in L.nonzero_brackets()], L.dim)


def second_lcs_term(L: LieAlgebra) -> Subspace:
    """``[g, [g, g]]``."""
    d = derived_subalgebra(L)
    return Subspace.span([bracket(L, unit(L.dim, i), v) for i in range(L.dim) for v in d.vectors],
                         L.dim)


def abelianization(L: LieAlgebra) -> QuotientSpace:
    return quotient_data(derived_subalgebra(L))


def ad(L: LieAlgebra, z: Sequence) -> Mat:
    """Matrix of ``x -> [z, x]`` (columns are images of basis vectors)."""
    z = vec(z)
    if len(z) != L.dim:
        raise ValueError(f"vector must have length {L.dim}")
    cols = [bracket(L, z, unit(L.dim, j)) for j in range(L.dim)]
    return Mat.from_cols(cols, L.dim) if cols else Mat.zeros(0, 0)


@dataclass(frozen=True)
class LieAutomorphism:
    matrix: Mat
    label: str = field(default="", compare=False)


def is_automorphism(L: LieAlgebra, phi) -> bool:
    phi = phi.matrix if isinstance(phi, LieAutomorphism) else phi
    n = L.dim
    if phi.shape != (n, n) or rank(phi) < n:
        return False
    images = [phi.col(i) for i in range(n)]
    for i, j in combinations(range(n), 2):
        if phi.apply(L.structure[i][j]) != bracket(L, images[i], images[j]):
            return False
    return True


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            c[i][j][:n1] = L1.structure[i][j]
    for i in range(n2):
        for j in range(n2):
            c[n1 + i][n1 + j][n1:] = L2.structure[i][j]
    if name is None:
        name = f"{L1.name or '?'} + {L2.name or '?'}"
    return LieAlgebra(n, c, name)


def change_basis(L: LieAlgebra, P: Mat, name: str | None = None) -> LieAlgebra:
    """Structure constants in the basis ``f_a = sum_m P[m, a] e_m``."""
    n = L.dim
    Pinv = inverse(P)
    cols = [P.col(a) for a in range(n)]
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b in combinations(range(n), 2):
        img = Pinv.apply(bracket(L, cols[a], cols[b]))
        c[a][b] = list(img)
        c[b][a] = [-x for x in img]
    return LieAlgebra(n, c, name or L.name)


def from_matrices(mats: Sequence[Mat], name: str | None = None) -> LieAlgebra:
    """Structure constants of the span of ``mats`` under the commutator.

    Raises ``ValueError`` if the matrices are dependent or the span is not
    closed under the commutator.
    """
    n = len(mats)
    if n == 0:
        return LieAlgebra(0, (), name)
    flat = Mat.from_cols([m.entries for m in mats])
    if rank(flat) < n:
        raise ValueError("realization matrices are linearly dependent")
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b in combinations(range(n), 2):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        coords = solve(flat, comm.entries)
        if coords is None:
            raise ValueError(f"commutator of basis {a},{b} leaves the span")
        c[a][b] = list(coords)
        c[b][a] = [-x for x in coords]
    return LieAlgebra(n, c, name)
