import numpy as np
import pytest
import scipy.linalg

from biinvariant import catalog
from biinvariant.invariant_forms import AltBilinearForm, invariant_two_forms
from biinvariant.numeric_check import (
    RealizationError,
    ad_exp_invariance,
    finite_difference_check,
    matrix_exp,
)


def test_exp_zero_and_diag():
    assert np.array_equal(matrix_exp(np.zeros((3, 3))), np.eye(3))
    assert abs(matrix_exp([[1.0]])[0, 0] - np.e) <= 1e-12
    d = matrix_exp(np.diag([1.0, -2.0, 0.5]))
    assert np.allclose(d, np.diag(np.exp([1.0, -2.0, 0.5])), rtol=1e-12, atol=0)


def test_exp_inverse_property():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = rng.uniform(-1, 1, (5, 5))
        m /= max(1.0, np.linalg.norm(m, 2))
        assert np.abs(matrix_exp(-m) @ matrix_exp(m) - np.eye(5)).max() <= 1e-9


def test_exp_matches_scipy_large_norm():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(6, 6)) * 3
    ref = scipy.linalg.expm(m)
    assert np.abs(matrix_exp(m) - ref).max() / np.abs(ref).max() < 1e-12


def test_exp_rejects_non_square():
    with pytest.raises(ValueError):
        matrix_exp(np.zeros((2, 3)))


def test_zero_form_has_zero_error():
    r = ad_exp_invariance(catalog.su(2), AltBilinearForm.zero(3))
    assert r.max_relative_error == 0 and r.passed


def test_heisenberg_invariant_form_passes():
    e = catalog.heisenberg(3)
    r = ad_exp_invariance(e, AltBilinearForm.elementary(3, 0, 1))
    assert r.passed and r.max_relative_error <= 1e-9


def test_su2_negative_control():
    r = ad_exp_invariance(catalog.su(2), AltBilinearForm.elementary(3, 0, 1), t_samples=[1.0])
    assert not r.passed and r.max_relative_error >= 1e-3


def test_missing_realization():
    e = catalog.semidirect(catalog.abelian(1), 1, [[[0]]])
    with pytest.raises(RealizationError):
        ad_exp_invariance(e, AltBilinearForm.zero(2))


@pytest.mark.parametrize("e", [catalog.heisenberg(5), catalog.su(3), catalog.gl(2),
                               catalog.strictly_upper_triangular(4), catalog.u(2)],
                         ids=lambda e: e.name)
def test_finite_difference_agrees_with_bracket(e):
    assert finite_difference_check(e).passed


def test_invariant_forms_pass_on_realized_entries():
    for e in (catalog.heisenberg(5), catalog.abelian(3), catalog.strictly_upper_triangular(4)):
        for f in invariant_two_forms(e.algebra):
            assert ad_exp_invariance(e, f).passed
