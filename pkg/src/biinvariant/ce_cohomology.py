"""Chevalley-Eilenberg complex of a Lie algebra with trivial coefficients.

Differentials d_0, d_1, d_2 are available, so cochains of degree 0..3 appear.

A k-cochain is a vector indexed by the strictly increasing k-tuples of basis
indices in lexicographic order.  The differential is

    (d w)(x_1, ..., x_{k+1}) = sum_{i<j} (-1)^(i+j) w([x_i, x_j], x_1, ..^i..^j.., x_{k+1})

(indices 1-based).  With this sign convention a 1-cochain ``p`` maps to
``(d p)(x, y) = -p([x, y])`` and a 2-cochain ``eta`` satisfies
``(d eta)(x, y, z) = -(eta([x,y],z) + eta([y,z],x) + eta([z,x],y))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .exact_linalg import Mat, rank, solve
from .invariant_forms import (
    AltBilinearForm,
    IdentityFailure,
    cocycle_residual,
    invariant_two_forms,
)
from .lie_algebra import LieAlgebra, derived_subalgebra, second_lcs_term

MAX_DEGREE = 2
# d p = DIFFERENTIAL_SIGN * p([., .]) for 1-cochains
DIFFERENTIAL_SIGN = -1


@dataclass(frozen=True)
class CochainBasis:
    degree: int
    indices: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, n: int, k: int) -> "CochainBasis":
        return cls(k, tuple(combinations(range(n), k)))

    def __len__(self):
        return len(self.indices)

    def position(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.indices)}


@dataclass(frozen=True)
class CoboundaryWitness:
    """Functional ``p`` with ``eta(e_i, e_j) = p([e_i, e_j])``."""

    functional: tuple


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``idx`` and the sorted tuple (sign 0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort counting transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(idx)


def ce_differential(L: LieAlgebra, k: int) -> Mat:
    """Matrix of ``d: C^k -> C^{k+1}`` in the lexicographic cochain bases."""
    if not 0 <= k <= MAX_DEGREE:
        raise ValueError(f"unsupported degree {k}; supported 0..{MAX_DEGREE}")
    n = L.dim
    src = CochainBasis.of(n, k)
    dst = CochainBasis.of(n, k + 1)
    pos = src.position()
    rows = []
    for xs in dst.indices:
        row = [Fraction(0)] * len(src)
        for i, j in combinations(range(k + 1), 2):
            # 0-based i, j: (-1)^((i+1)+(j+1)) = (-1)^(i+j)
            sgn = -1 if (i + j) % 2 else 1
            rest = [x for t, x in enumerate(xs) if t not in (i, j)]
            for m, c in enumerate(L.structure[xs[i]][xs[j]]):
                if not c:
                    continue
                s, key = _sort_sign([m] + rest)
                if s:
                    row[pos[key]] += sgn * s * c
        rows.append(row)
    return Mat.from_rows(rows, len(src))


def cohomology_dim(L: LieAlgebra, k: int) -> int:
    """``dim ker d_k - rank d_{k-1}``."""
    if not 0 <= k <= MAX_DEGREE:
        raise ValueError(f"unsupported degree {k}; supported 0..{MAX_DEGREE}")
    n = L.dim
    kernel = comb(n, k) - rank(ce_differential(L, k))
    image = rank(ce_differential(L, k - 1)) if k > 0 else 0
    return kernel - image


def betti_numbers(L: LieAlgebra, max_degree: int = MAX_DEGREE) -> list[int]:
    ranks = [rank(ce_differential(L, k)) for k in range(max_degree + 1)]
    out = []
    for k in range(max_degree + 1):
        out.append(comb(L.dim, k) - ranks[k] - (ranks[k - 1] if k else 0))
    return out


def bracket_matrix(L: LieAlgebra) -> Mat:
    """Rows indexed by pairs ``i < j``; row ``(i, j)`` is ``[e_i, e_j]``."""
    n = L.dim
    return Mat.from_rows([L.structure[i][j] for i, j in combinations(range(n), 2)], n)


def coboundary_witness(L: LieAlgebra, eta: AltBilinearForm) -> CoboundaryWitness | None:
    """A functional ``p`` with ``eta = p o [., .]``, or None if ``eta`` is not a coboundary.

    Free variables of the linear system are set to zero.
    """
    if eta.dim != L.dim:
        raise ValueError(f"form of dimension {eta.dim} on algebra of dimension {L.dim}")
    if cocycle_residual(L, eta) != 0:
        raise ValueError("form is not a 2-cocycle")
    p = solve(bracket_matrix(L), eta.to_vector())
    return None if p is None else CoboundaryWitness(p)


def vanishing_criterion(L: LieAlgebra) -> tuple[bool, str]:
    """``H^2 = 0`` and ``[g,[g,g]] = [g,g]``; when both hold there are no invariant 2-forms."""
    h2 = cohomology_dim(L, 2)
    derived = derived_subalgebra(L)
    lcs2 = second_lcs_term(L)
    reasons = []
    if h2:
        reasons.append(f"H^2 = {h2} != 0")
    if lcs2.dim != derived.dim:
        reasons.append(f"[g,[g,g]] has dim {lcs2.dim} < dim [g,g] = {derived.dim}")
    if reasons:
        return False, "; ".join(reasons)
    forms = invariant_two_forms(L)
    if forms:
        raise IdentityFailure(f"criterion holds but {len(forms)} invariant 2-forms were found")
    return True, f"H^2 = 0 and [g,[g,g]] = [g,g] (dim {derived.dim}); no invariant 2-forms"
