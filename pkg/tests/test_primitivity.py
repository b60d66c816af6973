import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from biinvariant import catalog
from biinvariant.exact_linalg import Mat, kernel_basis, rank
from biinvariant.invariant_forms import AltBilinearForm, classify
from biinvariant.primitivity import (
    is_primitive,
    presymplectic_reduce,
    primitivity_defect,
    standard_symplectic,
)
from biinvariant.sampling import random_skew_form

from conftest import small_rationals


def skew_forms(min_dim=1, max_dim=6):
    return st.integers(min_dim, max_dim).flatmap(
        lambda n: st.lists(small_rationals, min_size=comb(n, 2), max_size=comb(n, 2)).map(
            lambda v: AltBilinearForm.from_vector(n, v, "a")))


def defect_oracle(lam, v1, v2, w1, w2):
    """pr1^* lam + pr2^* lam - add^* lam evaluated on ((v1,v2),(w1,w2))."""
    add = lambda a, b: [x + y for x, y in zip(a, b)]
    return lam(v1, w1) + lam(v2, w2) - lam(add(v1, v2), add(w1, w2))


def test_defect_of_zero():
    assert primitivity_defect(AltBilinearForm.zero(3)).is_zero()
    assert is_primitive(AltBilinearForm.zero(3))


def test_defect_standard_form_cross_terms():
    # coordinates (x1, y1, x2, y2): defect is -dx1^dy2 - dx2^dy1
    D = primitivity_defect(AltBilinearForm.elementary(2, 0, 1, "a")).form.coeffs
    expect = [[0, 0, 0, -1],
              [0, 0, 1, 0],
              [0, -1, 0, 0],
              [1, 0, 0, 0]]
    assert D == Mat.from_rows(expect)
    assert not is_primitive(AltBilinearForm.elementary(2, 0, 1, "a"))


def test_defect_block_structure():
    lam = random_skew_form(random.Random(3), 4, nonzero=True)
    D = primitivity_defect(lam).form.coeffs
    for i in range(4):
        for j in range(4):
            assert D[i, j] == 0 and D[4 + i, 4 + j] == 0


@given(skew_forms(), st.data())
def test_defect_matches_oracle(lam, data):
    n = lam.dim
    vecs = [data.draw(st.lists(small_rationals, min_size=n, max_size=n)) for _ in range(4)]
    v1, v2, w1, w2 = vecs
    D = primitivity_defect(lam)
    assert D(v1 + v2, w1 + w2) == defect_oracle(lam, v1, v2, w1, w2)


@given(skew_forms())
def test_primitive_iff_zero(lam):
    assert is_primitive(lam) == lam.is_zero()


def test_presymplectic_zero():
    red = presymplectic_reduce(AltBilinearForm.zero(3))
    assert red.radical.dim == 3 and red.reduced_dim == 0


def test_presymplectic_rank_two_in_three():
    red = presymplectic_reduce(AltBilinearForm.elementary(3, 0, 1))
    assert red.reduced_dim == 2
    assert red.radical == kernel_basis(Mat.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    assert red.radical.vectors == [(0, 0, 1)]


def test_presymplectic_full_rank_darboux():
    lam = AltBilinearForm.from_vector(4, [1, 2, Fraction(1, 3), -1, 0, 5])
    red = presymplectic_reduce(lam)
    assert red.reduced_dim == 4
    P = red.darboux_basis
    assert P.T @ lam.coeffs @ P == standard_symplectic(2)


@given(skew_forms(max_dim=8))
def test_presymplectic_properties(lam):
    red = presymplectic_reduce(lam)
    n = lam.dim
    r = rank(lam.coeffs)
    assert r % 2 == 0 and red.reduced_dim == r
    J = standard_symplectic(r // 2)
    q = red.projection
    assert q.shape == (r, n) and rank(q) == r
    assert q.T @ J @ q == lam.coeffs
    assert red.radical == kernel_basis(lam.coeffs)
    P = red.darboux_basis
    assert P.T @ lam.coeffs @ P == standard_symplectic(r // 2, n)


@pytest.mark.parametrize("e", [catalog.heisenberg(5), catalog.abelian(3),
                               catalog.strictly_upper_triangular(4)], ids=lambda e: e.name)
def test_invariant_forms_never_primitive(e):
    rep = classify(e.algebra)
    assert rep.descended_forms
    for lam in rep.descended_forms:
        assert not is_primitive(lam)
