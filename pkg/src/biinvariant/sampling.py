"""Seeded random generators for exact property runs.

All functions take a :class:`random.Random`; ``DEFAULT_SEED`` is the seed used
by the test suite and scripts unless overridden.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb

from . import catalog
from .exact_linalg import Mat, bareiss_det
from .invariant_forms import AltBilinearForm
from .lie_algebra import LieAlgebra, change_basis, check_jacobi

DEFAULT_SEED = 1729


def random_rational(rng: random.Random, bound: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_skew_form(rng: random.Random, n: int, nonzero: bool = False,
                     basis_tag: str = "a") -> AltBilinearForm:
    while True:
        v = [random_rational(rng) if rng.random() < 0.7 else Fraction(0) for _ in range(comb(n, 2))]
        if not nonzero or any(v):
            return AltBilinearForm.from_vector(n, v, basis_tag)


def random_invertible(rng: random.Random, n: int, bound: int = 2) -> Mat:
    while True:
        m = Mat(n, n, (rng.randint(-bound, bound) for _ in range(n * n)))
        if bareiss_det(m):
            return m


def _small_entries():
    return [
        catalog.abelian(1), catalog.abelian(2), catalog.abelian(3),
        catalog.heisenberg(3), catalog.aff(1), catalog.su(2), catalog.sl(2),
        catalog.so(3), catalog.strictly_upper_triangular(3), catalog.gl(2), catalog.u(2),
        catalog.heisenberg(5), catalog.so(4), catalog.strictly_upper_triangular(4),
    ]


def random_direct_sum(rng: random.Random, pool=None, max_dim: int = 12) -> catalog.CatalogEntry:
    pool = pool or _small_entries()
    while True:
        a, b = rng.choice(pool), rng.choice(pool)
        if a.dim + b.dim <= max_dim:
            return catalog.direct_sum(a, b)


def random_semidirect(rng: random.Random, max_dim: int = 6) -> catalog.CatalogEntry:
    d = rng.randint(1, max_dim - 1)
    A = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
    return catalog.semidirect(catalog.abelian(1), d, [A])


def random_nilpotent(rng: random.Random, n: int, tries: int = 200) -> LieAlgebra | None:
    """Random tensor with ``[e_i, e_j]`` in ``span{e_k : k > j}``, kept only if Jacobi holds."""
    for _ in range(tries):
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i, j in combinations(range(n), 2):
            for k in range(j + 1, n):
                if rng.random() < 0.3:
                    x = Fraction(rng.randint(-2, 2))
                    c[i][j][k], c[j][i][k] = x, -x
        L = LieAlgebra(n, c, f"nilpotent({n})")
        if not check_jacobi(L):
            return L
    return None


def random_lie_algebra(rng: random.Random, max_dim: int = 6) -> LieAlgebra:
    """A Jacobi-valid algebra of dimension <= max_dim in a random integer basis."""
    kind = rng.random()
    if kind < 0.2:
        L = random_nilpotent(rng, rng.randint(3, max_dim))
        if L is not None:
            return L
    if kind < 0.4:
        base = random_semidirect(rng, max_dim).algebra
    else:
        pool = [e for e in _small_entries() if e.dim <= max_dim]
        base = rng.choice(pool)
        if rng.random() < 0.5:
            other = rng.choice([e for e in pool if e.dim + base.dim <= max_dim] or [None])
            if other is not None:
                base = catalog.direct_sum(base, other)
        base = base.algebra
    P = random_invertible(rng, base.dim)
    return change_basis(base, P, f"{base.name} (random basis)")
