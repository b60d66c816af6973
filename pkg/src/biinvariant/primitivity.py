"""Primitivity defect of constant 2-forms on a vector group, and presymplectic reduction.

On the additive group ``a`` a constant 2-form ``lam`` has defect

    D = pr1^* lam + pr2^* lam - add^* lam

on ``a + a``, which evaluates to ``-lam(v1, w2) - lam(v2, w1)``.  ``lam`` is
primitive iff ``D = 0``, which only happens for ``lam = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import Mat, Subspace, inverse, kernel_basis, unit
from .invariant_forms import AltBilinearForm


@dataclass(frozen=True)
class DefectForm:
    form: AltBilinearForm  # on a + a, coordinates (v1, v2)

    @property
    def base_dim(self) -> int:
        return self.form.dim // 2

    def is_zero(self) -> bool:
        return self.form.is_zero()

    def __call__(self, x, y):
        return self.form(x, y)


def primitivity_defect(lam: AltBilinearForm) -> DefectForm:
    a = lam.dim
    L = lam.coeffs
    m = [[Fraction(0)] * (2 * a) for _ in range(2 * a)]
    for i in range(a):
        for j in range(a):
            m[i][a + j] = -L[i, j]
            m[a + i][j] = -L[i, j]
    return DefectForm(AltBilinearForm(2 * a, Mat.from_rows(m, 2 * a), "a+a"))


def is_primitive(lam: AltBilinearForm) -> bool:
    return primitivity_defect(lam).is_zero()


def standard_symplectic(r: int, n: int | None = None) -> Mat:
    """``sum_i dx_i ^ dy_i`` in coordinates ``(x_1..x_r, y_1..y_r)``, padded by zeros to ``n``."""
    n = 2 * r if n is None else n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(r):
        m[i][r + i] = Fraction(1)
        m[r + i][i] = Fraction(-1)
    return Mat.from_rows(m, n)


@dataclass(frozen=True)
class PresymplecticReduction:
    radical: Subspace
    reduced_dim: int
    projection: Mat      # reduced_dim x n, surjective; lam = projection^T J projection
    darboux_basis: Mat   # n x n, columns e_1..e_r, f_1..f_r, then radical vectors

    @property
    def rank(self) -> int:
        return self.reduced_dim


def presymplectic_reduce(lam: AltBilinearForm) -> PresymplecticReduction:
    """Symplectic Gram-Schmidt over the rationals."""
    n = lam.dim
    B = lam
    pool = [unit(n, i) for i in range(n)]
    es, fs = [], []
    while True:
        hit = next(((a, b) for a in range(len(pool)) for b in range(a + 1, len(pool))
                    if B(pool[a], pool[b])), None)
        if hit is None:
            break
        a, b = hit
        e = pool[a]
        s = B(pool[a], pool[b])
        f = tuple(x / s for x in pool[b])
        pool = [w for t, w in enumerate(pool) if t not in (a, b)]
        new_pool = []
        for w in pool:
            bwf, bwe = B(w, f), B(w, e)
            new_pool.append(tuple(x - bwf * y + bwe * z for x, y, z in zip(w, e, f)))
        pool = new_pool
        es.append(e)
        fs.append(f)
    r = len(es)
    P = Mat.from_cols(es + fs + pool, n) if n else Mat.zeros(0, 0)
    Pinv = inverse(P)
    projection = Mat.from_rows([Pinv.row(i) for i in range(2 * r)], n)
    return PresymplecticReduction(
        radical=kernel_basis(lam.coeffs),
        reduced_dim=2 * r,
        projection=projection,
        darboux_basis=P,
    )
