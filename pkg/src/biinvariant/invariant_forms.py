"""Ad-invariant alternating bilinear forms on a Lie algebra.

Coefficient vectors of 2-forms on an n-dimensional space are indexed by the
pairs ``(i, j)``, ``i < j``, in lexicographic order (see :func:`pair_index`).
Every module that flattens a 2-form uses this ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .exact_linalg import (
    Mat,
    QuotientSpace,
    Subspace,
    contains,
    kernel_basis,
    rank,
    vec,
)
from .lie_algebra import (
    LieAlgebra,
    LieAutomorphism,
    abelianization,
    is_automorphism,
)


class IdentityFailure(RuntimeError):
    """An identity that must hold for every Lie algebra was found to fail."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class DescentError(ValueError):
    def __init__(self, triple, value):
        self.triple = triple
        self.value = value
        i, j, k = triple
        super().__init__(f"form does not kill [g,g]: eta([e_{i},e_{j}], e_{k}) = {value}")


def pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: idx for idx, p in enumerate(pairs(n))}


@dataclass(frozen=True)
class AltBilinearForm:
    """Skew-symmetric bilinear form ``eta(x, y) = x^T coeffs y``."""

    dim: int
    coeffs: Mat
    basis_tag: str = field(default="g", compare=False)

    def __post_init__(self):
        if self.coeffs.shape != (self.dim, self.dim):
            raise ValueError(f"coefficient matrix must be {self.dim}x{self.dim}")
        if self.coeffs != -self.coeffs.T:
            raise ValueError("coefficient matrix is not skew-symmetric")

    @classmethod
    def zero(cls, n: int, basis_tag: str = "g") -> "AltBilinearForm":
        return cls(n, Mat.zeros(n, n), basis_tag)

    @classmethod
    def elementary(cls, n: int, i: int, j: int, basis_tag: str = "g") -> "AltBilinearForm":
        """``e_i^* wedge e_j^*``: value 1 on ``(e_i, e_j)``."""
        if i == j:
            raise ValueError("e_i^* wedge e_i^* is zero")
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i][j], m[j][i] = Fraction(1), Fraction(-1)
        return cls(n, Mat.from_rows(m, n), basis_tag)

    @classmethod
    def from_vector(cls, n: int, v: Sequence, basis_tag: str = "g") -> "AltBilinearForm":
        v = vec(v)
        if len(v) != comb(n, 2):
            raise ValueError(f"expected {comb(n, 2)} coefficients for a 2-form in dim {n}")
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), x in zip(pairs(n), v):
            m[i][j] = x
            m[j][i] = -x
        return cls(n, Mat.from_rows(m, n), basis_tag)

    def to_vector(self) -> tuple:
        return tuple(self.coeffs[i, j] for i, j in pairs(self.dim))

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        x, y = vec(x), vec(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError(f"vectors must have length {self.dim}")
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.coeffs.row(i)
                total += xi * sum((r * yj for r, yj in zip(row, y) if r and yj), Fraction(0))
        return total

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def __add__(self, other):
        return AltBilinearForm(self.dim, self.coeffs + other.coeffs, self.basis_tag)

    def __sub__(self, other):
        return AltBilinearForm(self.dim, self.coeffs - other.coeffs, self.basis_tag)

    def scale(self, s) -> "AltBilinearForm":
        return AltBilinearForm(self.dim, self.coeffs.scale(s), self.basis_tag)

    def pretty(self, symbol: str = "e") -> str:
        terms = []
        for (i, j), x in zip(pairs(self.dim), self.to_vector()):
            if x:
                coef = "" if x == 1 else "-" if x == -1 else f"{x}*"
                terms.append(f"{coef}{symbol}{i}*^{symbol}{j}*")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _check_dim(L: LieAlgebra, eta: AltBilinearForm):
    if eta.dim != L.dim:
        raise ValueError(f"form of dimension {eta.dim} on algebra of dimension {L.dim}")


def _eta_on_vector_basis(eta_coeffs: Mat, v: Sequence, k: int) -> Fraction:
    """``eta(v, e_k)``."""
    return sum((x * eta_coeffs[m, k] for m, x in enumerate(v) if x), Fraction(0))


def invariance_system(L: LieAlgebra) -> Mat:
    """Linear system in the pair coefficients of eta expressing ad-invariance.

    One row per ``(k, i, j)`` with ``i < j``:
    ``eta([e_k, e_i], e_j) + eta(e_i, [e_k, e_j]) = 0``.
    """
    n = L.dim
    idx = pair_index(n)

    def add(row, a, b, s):
        # row += s * eta(e_a, e_b)
        if a < b:
            row[idx[a, b]] += s
        elif a > b:
            row[idx[b, a]] -= s

    rows = []
    seen = set()
    for k in range(n):
        for i, j in pairs(n):
            row = [Fraction(0)] * len(idx)
            for m, c in enumerate(L.structure[k][i]):
                if c:
                    add(row, m, j, c)
            for m, c in enumerate(L.structure[k][j]):
                if c:
                    add(row, i, m, c)
            t = tuple(row)
            if any(t) and t not in seen:
                seen.add(t)
                rows.append(t)
    return Mat.from_rows(rows, len(idx))


def invariant_two_forms(L: LieAlgebra) -> list[AltBilinearForm]:
    """Basis of the Ad-invariant alternating 2-forms on ``L``."""
    n = L.dim
    sol = kernel_basis(invariance_system(L))
    return [AltBilinearForm.from_vector(n, v) for v in sol.vectors]


def cocycle_residual(L: LieAlgebra, eta: AltBilinearForm) -> Fraction:
    """Max over basis triples of ``|eta([x,y],z) + eta([y,z],x) + eta([z,x],y)|``."""
    _check_dim(L, eta)
    c, E = L.structure, eta.coeffs
    worst = Fraction(0)
    for i, j, k in combinations(range(L.dim), 3):
        val = (_eta_on_vector_basis(E, c[i][j], k)
               + _eta_on_vector_basis(E, c[j][k], i)
               + _eta_on_vector_basis(E, c[k][i], j))
        worst = max(worst, abs(val))
    return worst


def _reduced_scan(L: LieAlgebra, eta: AltBilinearForm):
    c, E = L.structure, eta.coeffs
    worst, where = Fraction(0), None
    for i, j, _ in L.nonzero_brackets():
        for k in range(L.dim):
            val = _eta_on_vector_basis(E, c[i][j], k)
            if abs(val) > worst:
                worst, where = abs(val), ((i, j, k), val)
    return worst, where


def reduced_residual(L: LieAlgebra, eta: AltBilinearForm) -> Fraction:
    """Max over basis triples of ``|eta([e_i, e_j], e_k)|``."""
    _check_dim(L, eta)
    return _reduced_scan(L, eta)[0]


def descend(L: LieAlgebra, eta: AltBilinearForm, quot: QuotientSpace) -> AltBilinearForm:
    """The form ``lambda(v, w) = eta(s v, s w)`` on the abelianization (``s`` = section)."""
    _check_dim(L, eta)
    if quot.source_dim != L.dim:
        raise ValueError("quotient does not match the algebra")
    worst, where = _reduced_scan(L, eta)
    if worst:
        raise DescentError(*where)
    s = quot.section
    return AltBilinearForm(quot.quotient_dim, s.T @ eta.coeffs @ s, "a")


def pullback(quot: QuotientSpace, lam: AltBilinearForm) -> AltBilinearForm:
    """``(q^* lambda)(x, y) = lambda(q x, q y)``."""
    if lam.dim != quot.quotient_dim:
        raise ValueError(f"form of dimension {lam.dim} on quotient of dimension {quot.quotient_dim}")
    q = quot.q
    return AltBilinearForm(quot.source_dim, q.T @ lam.coeffs @ q, "g")


def lift_independence_check(L: LieAlgebra, eta: AltBilinearForm, quot: QuotientSpace,
                            rng, trials: int = 50, bound: int = 5) -> bool:
    """Evaluate the descended form with lifts perturbed by random elements of ``[g, g]``."""
    lam = descend(L, eta, quot)
    a = quot.quotient_dim
    comm = quot.kernel.vectors
    if a == 0:
        return True
    for _ in range(trials):
        v = [Fraction(rng.randint(-bound, bound)) for _ in range(a)]
        w = [Fraction(rng.randint(-bound, bound)) for _ in range(a)]
        xv, xw = list(quot.lift(v)), list(quot.lift(w))
        for b in comm:
            s, t = rng.randint(-bound, bound), rng.randint(-bound, bound)
            xv = [x + s * y for x, y in zip(xv, b)]
            xw = [x + t * y for x, y in zip(xw, b)]
        if eta(xv, xw) != lam(v, w):
            return False
    return True


def lambda2_basis(a: int, basis_tag: str = "a") -> list[AltBilinearForm]:
    return [AltBilinearForm.elementary(a, i, j, basis_tag) for i, j in pairs(a)]


def in_span(forms: Sequence[AltBilinearForm], eta: AltBilinearForm) -> bool:
    sub = Subspace.span([f.to_vector() for f in forms], comb(eta.dim, 2))
    return contains(sub, eta.to_vector())


@dataclass
class ClassificationReport:
    name: str | None
    dim_g: int
    dim_a: int
    dim_derived: int
    dim_invariant_space: int
    expected_dim: int
    basis_forms: list[AltBilinearForm]
    descended_forms: list[AltBilinearForm]
    identities_pass: dict[str, bool]
    vanishing_predicate: bool

    @property
    def ok(self) -> bool:
        return all(self.identities_pass.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.identities_pass.items() if not v]


def classify(L: LieAlgebra, strict: bool = True) -> ClassificationReport:
    """Invariant 2-forms of ``L`` checked against ``Lambda^2`` of the abelianization.

    With ``strict`` any failing identity raises :class:`IdentityFailure`
    carrying the report.
    """
    quot = abelianization(L)
    forms = invariant_two_forms(L)
    a = quot.quotient_dim
    expected = comb(a, 2)

    checks = {
        "cocycle_residual_zero": all(cocycle_residual(L, f) == 0 for f in forms),
        "reduced_residual_zero": all(reduced_residual(L, f) == 0 for f in forms),
    }
    descended = []
    if checks["reduced_residual_zero"]:
        descended = [descend(L, f, quot) for f in forms]
        checks["pullback_descend_identity"] = all(
            pullback(quot, lam) == f for lam, f in zip(descended, forms))
    else:
        checks["pullback_descend_identity"] = False
    ok = True
    pulled = []
    for lam in lambda2_basis(a):
        eta = pullback(quot, lam)
        pulled.append(eta)
        if reduced_residual(L, eta) != 0 or descend(L, eta, quot) != lam:
            ok = False
            break
    checks["descend_pullback_identity"] = ok
    checks["pullbacks_invariant"] = all(in_span(forms, eta) for eta in pulled)
    checks["dimension_matches"] = len(forms) == expected
    report = ClassificationReport(
        name=L.name,
        dim_g=L.dim,
        dim_a=a,
        dim_derived=quot.kernel.dim,
        dim_invariant_space=len(forms),
        expected_dim=expected,
        basis_forms=forms,
        descended_forms=descended,
        identities_pass=checks,
        vanishing_predicate=a <= 1,
    )
    if strict and not report.ok:
        raise IdentityFailure(f"classification identities failed: {report.failures()}", report)
    return report


def induced_quotient_map(quot: QuotientSpace, phi: Mat) -> Mat:
    """``q . phi . section``: the action of ``phi`` on the abelianization."""
    return quot.q @ phi @ quot.section


def lambda2_action(rho: Mat) -> Mat:
    """Matrix of ``lambda -> lambda(rho ., rho .)`` on pair coefficients."""
    a = rho.rows
    cols = []
    for lam in lambda2_basis(a):
        cols.append(AltBilinearForm(a, rho.T @ lam.coeffs @ rho, "a").to_vector())
    return Mat.from_cols(cols, comb(a, 2)) if cols else Mat.zeros(0, 0)


def component_invariants(L: LieAlgebra, autos: Sequence) -> Subspace:
    """Forms in ``Lambda^2 a^*`` fixed by every automorphism in ``autos``.

    The result lives in the pair-coefficient space of dimension ``C(dim a, 2)``.
    Only generators need be passed.
    """
    quot = abelianization(L)
    a = quot.quotient_dim
    N = comb(a, 2)
    blocks = []
    for phi in autos:
        m = phi.matrix if isinstance(phi, LieAutomorphism) else phi
        if not is_automorphism(L, m):
            raise ValueError("not a Lie algebra automorphism")
        act = lambda2_action(induced_quotient_map(quot, m))
        blocks.extend((act - Mat.identity(N)).row(i) for i in range(N))
    if not blocks:
        return Subspace.full(N)
    return kernel_basis(Mat.from_rows(blocks, N))


def pullback_injectivity_check(q: Mat) -> bool:
    """Whether ``Lambda^2 q^*`` is injective, for a surjective linear map ``q``."""
    a, n = q.shape
    if rank(q) != a:
        raise ValueError("q is not surjective")
    cols = [AltBilinearForm(n, q.T @ lam.coeffs @ q).to_vector() for lam in lambda2_basis(a)]
    if not cols:
        return True
    return rank(Mat.from_cols(cols, comb(n, 2))) == comb(a, 2)
