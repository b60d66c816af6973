"""Floating-point check of Ad(exp(tZ))-invariance on matrix realizations.

This is the only module using floats; exact data is converted to the nearest
doubles at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2

import numpy as np

from .catalog import CatalogEntry
from .invariant_forms import AltBilinearForm

DEFAULT_SEED = 1729
T_GRID = np.linspace(-1.0, 1.0, 21)
INVARIANCE_TOL = 1e-9
FD_TOL = 1e-6
FD_STEP = 1e-4
REEXPANSION_TOL = 1e-8

# Taylor degree on the scaled matrix; ||A / 2^s||_1 <= 1/2 keeps the remainder
# below 0.5^19 / 19! ~ 1e-23.
EXP_TAYLOR_DEGREE = 18
EXP_SCALE_THRESHOLD = 0.5


class RealizationError(ValueError):
    pass


def matrix_exp(m) -> np.ndarray:
    """Scaling and squaring with a degree-18 Taylor polynomial."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix_exp needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix_exp needs finite entries")
    n = a.shape[0]
    norm = np.abs(a).sum(axis=0).max() if n else 0.0
    s = max(0, ceil(log2(norm / EXP_SCALE_THRESHOLD))) if norm > EXP_SCALE_THRESHOLD else 0
    a = a / (2.0 ** s)
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, EXP_TAYLOR_DEGREE + 1):
        term = term @ a / k
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def to_float(mat) -> np.ndarray:
    return np.array([[float(x) for x in mat.row(i)] for i in range(mat.rows)], dtype=float)


@dataclass(frozen=True)
class NumericReport:
    samples: int
    max_relative_error: float
    tolerance: float
    passed: bool
    max_reexpansion_residual: float = 0.0


class Realization:
    """Float view of a catalog realization with basis re-expansion by least squares."""

    def __init__(self, entry: CatalogEntry):
        if entry.realization is None or entry.dim == 0:
            raise RealizationError(f"{entry.name} has no matrix realization")
        self.entry = entry
        self.mats = np.array([to_float(m) for m in entry.realization])
        self.n = len(self.mats)
        self.flat = self.mats.reshape(self.n, -1).T  # (N^2, n)
        self.pinv = np.linalg.pinv(self.flat)

    def matrix(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=float), self.mats, axes=1)

    def coords(self, m: np.ndarray) -> tuple[np.ndarray, float]:
        """Basis coordinates of ``m`` and the relative re-expansion residual."""
        flat = m.reshape(-1)
        c = self.pinv @ flat
        resid = np.linalg.norm(self.flat @ c - flat) / max(1.0, np.linalg.norm(flat))
        return c, float(resid)

    def ad_group(self, z, t: float) -> tuple[np.ndarray, float]:
        """Matrix of ``Ad_{exp(tZ)}`` in the basis, columns = images of basis vectors."""
        zm = t * self.matrix(z)
        g = matrix_exp(zm)
        ginv = matrix_exp(-zm)
        cols, worst = [], 0.0
        for b in self.mats:
            c, r = self.coords(g @ b @ ginv)
            cols.append(c)
            worst = max(worst, r)
        return np.array(cols).T, worst


def _rel_error(diff: float, eta: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    scale = np.abs(eta).max() * max(1.0, np.linalg.norm(x) * np.linalg.norm(y))
    return abs(diff) / scale if scale else 0.0


def ad_exp_invariance(entry: CatalogEntry, eta: AltBilinearForm, t_samples=T_GRID,
                      z_samples: int = 3, samples: int = 5, tol: float = INVARIANCE_TOL,
                      seed: int = DEFAULT_SEED) -> NumericReport:
    """Max relative error of ``eta(Ad_g X, Ad_g Y) - eta(X, Y)`` for ``g = exp(tZ)``.

    ``Z`` runs over the basis plus ``z_samples`` random directions; ``(X, Y)``
    over all basis pairs plus ``samples`` random pairs.
    """
    real = Realization(entry)
    n = real.n
    if eta.dim != n:
        raise ValueError(f"form of dimension {eta.dim} on algebra of dimension {n}")
    E = to_float(eta.coeffs)
    rng = np.random.default_rng(seed)
    zs = list(np.eye(n)) + [rng.uniform(-1, 1, n) for _ in range(z_samples)]
    xys = [(rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)) for _ in range(samples)]
    worst, worst_resid, count = 0.0, 0.0, 0
    for z in zs:
        for t in t_samples:
            A, resid = real.ad_group(z, float(t))
            worst_resid = max(worst_resid, resid)
            if resid > REEXPANSION_TOL:
                raise RealizationError(f"Ad_g leaves the realized span (residual {resid:.2e})")
            # basis pairs at once: A^T E A - E
            if E.any():
                worst = max(worst, np.abs(A.T @ E @ A - E).max() / np.abs(E).max())
            count += n * (n - 1) // 2
            for x, y in xys:
                diff = (A @ x) @ E @ (A @ y) - x @ E @ y
                worst = max(worst, _rel_error(diff, E, x, y))
                count += 1
    return NumericReport(count, float(worst), tol, bool(worst <= tol), worst_resid)


def _unit_vector(rng, n: int) -> np.ndarray:
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class FiniteDifferenceReport:
    samples: int
    max_abs_error: float
    tolerance: float
    passed: bool


def finite_difference_check(entry: CatalogEntry, eta: AltBilinearForm | None = None,
                            samples: int = 20, h: float = FD_STEP, tol: float = FD_TOL,
                            seed: int = DEFAULT_SEED) -> FiniteDifferenceReport:
    """Central difference of ``t -> eta(Ad_{exp tZ} X, Y)`` at 0 against ``eta([Z, X], Y)``.

    The derivative side uses the group realization; the bracket side uses the
    exact structure constants.  ``X, Y, Z`` are random unit vectors so the
    O(h^2) truncation term does not scale with the dimension.  Any skew form works (invariance is not assumed);
    by default a random one is drawn.
    """
    real = Realization(entry)
    n = real.n
    rng = np.random.default_rng(seed)
    if eta is None:
        E = rng.uniform(-1, 1, (n, n))
        E = E - E.T
    else:
        E = to_float(eta.coeffs)
    c = np.array([[[float(x) for x in cij] for cij in ci] for ci in entry.algebra.structure])
    worst = 0.0
    for _ in range(samples):
        x, y, z = (_unit_vector(rng, n) for _ in range(3))
        plus, _ = real.ad_group(z, h)
        minus, _ = real.ad_group(z, -h)
        deriv = ((plus @ x) @ E @ y - (minus @ x) @ E @ y) / (2 * h)
        zx = np.einsum("i,j,ijk->k", z, x, c) if n else np.zeros(0)
        worst = max(worst, abs(deriv - zx @ E @ y))
    return FiniteDifferenceReport(samples, float(worst), tol, bool(worst <= tol))

