from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from biinvariant import catalog
from biinvariant.exact_linalg import Mat, Subspace, contains, unit
from biinvariant.lie_algebra import (
    JacobiError,
    LieAlgebra,
    abelianization,
    ad,
    bracket,
    change_basis,
    check_jacobi,
    derived_subalgebra,
    direct_sum,
    is_automorphism,
    second_lcs_term,
)

from conftest import small_rationals

H3 = catalog.heisenberg(3).algebra
SU2 = catalog.su(2).algebra
AFF = catalog.aff(1).algebra
AB3 = catalog.abelian(3).algebra

ALGEBRAS = [H3, SU2, AFF, AB3, catalog.sl(2).algebra, catalog.gl(2).algebra,
            catalog.strictly_upper_triangular(4).algebra, catalog.heisenberg(5).algebra]


def vectors(n):
    return st.lists(small_rationals, min_size=n, max_size=n)


def test_heisenberg_bracket():
    assert bracket(H3, unit(3, 0), unit(3, 1)) == unit(3, 2)


def test_abelian_bracket_vanishes():
    assert bracket(AB3, (1, 2, 3), (4, 5, 6)) == (0, 0, 0)


def test_bracket_length_mismatch():
    with pytest.raises(ValueError):
        bracket(H3, (1, 0), (0, 1, 0))


def test_jacobi_valid():
    assert check_jacobi(SU2) == []
    assert check_jacobi(AB3) == []


def test_jacobi_su2_by_direct_expansion():
    # oracle: expand [[x,y],z] + cyclic with the public bracket on random-ish vectors
    x, y, z = (1, 2, -1), (0, 3, 5), (Fraction(1, 2), -4, 1)
    total = [a + b + c for a, b, c in zip(bracket(SU2, bracket(SU2, x, y), z),
                                          bracket(SU2, bracket(SU2, y, z), x),
                                          bracket(SU2, bracket(SU2, z, x), y))]
    assert not any(total)


def brute_force_jacobi(L):
    n = L.dim
    bad = set()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = unit(n, i), unit(n, j), unit(n, k)
                terms = [bracket(L, bracket(L, x, y), z), bracket(L, bracket(L, y, z), x),
                         bracket(L, bracket(L, z, x), y)]
                if any(sum(t) for t in zip(*terms)):
                    bad.add(tuple(sorted((i, j, k))))
    return sorted(bad)


def test_jacobi_violation_detected():
    L = LieAlgebra.from_brackets(3, {(0, 1): {0: 1}, (0, 2): {1: 1}})
    assert brute_force_jacobi(L) == [(0, 1, 2)]
    assert check_jacobi(L) == [(0, 1, 2)]
    with pytest.raises(JacobiError):
        L.validate()


@pytest.mark.parametrize("brackets", [
    {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: -1}},
    {(0, 1): {2: 1}, (1, 2): {0: 1}},
])
def test_cyclic_three_dim_tensors_satisfy_jacobi(brackets):
    # in dim 3 every Jacobi term for the triple (0,1,2) is [e_k, e_k] when
    # [e_i, e_j] is a multiple of the third basis vector
    L = LieAlgebra.from_brackets(3, brackets)
    assert brute_force_jacobi(L) == []
    assert check_jacobi(L) == []


@pytest.mark.parametrize("L", [SU2, H3, AFF, catalog.gl(2).algebra, catalog.so(4).algebra],
                         ids=lambda L: L.name)
def test_check_jacobi_matches_brute_force(L):
    assert check_jacobi(L) == brute_force_jacobi(L) == []


def test_antisymmetry_enforced():
    c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = 1
    with pytest.raises(ValueError):
        LieAlgebra(2, c)


def test_derived_subalgebra_examples():
    assert derived_subalgebra(AB3).dim == 0
    assert derived_subalgebra(H3) == Subspace.span([unit(3, 2)], 3)
    assert derived_subalgebra(SU2).dim == 3


def test_second_lcs_examples():
    assert second_lcs_term(H3).dim == 0
    assert second_lcs_term(SU2).dim == 3
    assert second_lcs_term(AB3).dim == 0


def test_abelianization_examples():
    qa = abelianization(AB3)
    assert qa.quotient_dim == 3 and qa.q == Mat.identity(3)
    assert abelianization(AFF).quotient_dim == 1
    assert abelianization(SU2).quotient_dim == 0


def test_ad_examples():
    assert ad(AB3, (1, 2, 3)).is_zero()
    m = ad(H3, unit(3, 0))
    assert m.apply(unit(3, 1)) == unit(3, 2)
    assert not any(m.apply(unit(3, 0))) and not any(m.apply(unit(3, 2)))
    for i in range(3):
        a = ad(SU2, unit(3, i))
        assert sum(a[k, k] for k in range(3)) == 0


def test_is_automorphism_examples():
    assert is_automorphism(H3, Mat.identity(3))
    assert is_automorphism(AB3, Mat.from_rows([[1, 2, 0], [0, 1, 0], [3, 0, 1]]))
    swap = Mat.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    assert is_automorphism(H3, swap)
    assert not is_automorphism(H3, Mat.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    assert not is_automorphism(AB3, Mat.zeros(3, 3))


def test_direct_sum_examples():
    a1 = catalog.abelian(1).algebra
    assert direct_sum(a1, a1) == catalog.abelian(2).algebra
    s = direct_sum(SU2, catalog.abelian(2).algebra)
    assert s.dim == 5
    assert derived_subalgebra(s).dim == 3


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: L.name)
def test_derived_is_ideal_and_contains_lcs(L):
    d = derived_subalgebra(L)
    for i in range(L.dim):
        for v in d.vectors:
            assert contains(d, bracket(L, unit(L.dim, i), v))
    assert second_lcs_term(L) <= d


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: L.name)
@given(data=st.data())
def test_bracket_bilinear_antisymmetric(L, data):
    n = L.dim
    x, y, z = (data.draw(vectors(n)) for _ in range(3))
    a = data.draw(small_rationals)
    assert bracket(L, x, x) == (0,) * n
    assert bracket(L, x, y) == tuple(-t for t in bracket(L, y, x))
    lhs = bracket(L, [a * p + q for p, q in zip(x, z)], y)
    rhs = [a * p + q for p, q in zip(bracket(L, x, y), bracket(L, z, y))]
    assert list(lhs) == rhs


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: L.name)
@given(data=st.data())
def test_quotient_kills_commutators(L, data):
    n = L.dim
    x, y = data.draw(vectors(n)), data.draw(vectors(n))
    qd = abelianization(L)
    assert not any(qd.q.apply(bracket(L, x, y)))


def test_abelianization_dims_add():
    for a, b in [(H3, SU2), (AFF, AB3), (catalog.gl(2).algebra, H3)]:
        assert abelianization(direct_sum(a, b)).quotient_dim == (
            abelianization(a).quotient_dim + abelianization(b).quotient_dim)


def test_automorphism_preserves_derived():
    swap = Mat.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    d = derived_subalgebra(H3)
    assert Subspace.span([swap.apply(v) for v in d.vectors], 3) == d


def test_change_basis_roundtrip(rng):
    from biinvariant.sampling import random_invertible
    P = random_invertible(rng, 3)
    L2 = change_basis(SU2, P)
    assert check_jacobi(L2) == []
    assert is_automorphism(SU2, Mat.identity(3))
    # P is an isomorphism L2 -> SU2
    for i in range(3):
        for j in range(3):
            assert P.apply(bracket(L2, unit(3, i), unit(3, j))) == bracket(SU2, P.col(i), P.col(j))
