from __future__ import annotations

from fractions import Fraction

import pytest

from hermtheta.eisenstein import (
    F12_NORMALIZER,
    MASS_WEIGHTS,
    IdentityError,
    UnsupportedWeightError,
    bernoulli,
    chi3,
    e12_via_mass_formula,
    e4_via_theta,
    eisenstein_coefficient,
    eisenstein_qexp,
    f10_qexp,
    f12_normalized,
    f12_qexp,
    generalized_bernoulli,
)
from hermtheta.hindex import det3, enumerate_indices
from hermtheta.qexp import phi_operator, symmetry_type, theta_operator


def test_bernoulli():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_generalized_bernoulli():
    assert [chi3(n) for n in range(6)] == [0, 1, -1, 0, 1, -1]
    assert generalized_bernoulli(1) == Fraction(-1, 3)
    assert generalized_bernoulli(3) == Fraction(2, 3)
    assert generalized_bernoulli(2) == 0


def test_rank_one_coefficients_are_elliptic():
    assert eisenstein_coefficient(4, (1, 0, 0, 0)) == 240
    assert eisenstein_coefficient(4, (2, 0, 0, 0)) == 240 * 9
    assert eisenstein_coefficient(6, (1, 0, 0, 0)) == -504
    assert eisenstein_coefficient(12, (1, 0, 0, 0)) == Fraction(65520, 691)
    # a rank-one index with nonzero off-diagonal entry
    assert det3((1, 3, 6, 0)) == 0
    assert eisenstein_coefficient(4, (1, 3, 6, 0)) == 240


def test_e4_values():
    e4 = eisenstein_qexp(4, 1, 1)
    assert e4[(0, 0, 0, 0)] == 1
    assert e4[(1, 1, 0, 0)] == 17280
    assert e4[(1, 1, 2, 0)] == 6480
    assert (e4.weight, e4.char_exponent) == (4, 1)


def test_e4_equals_rank4_theta():
    assert eisenstein_qexp(4, 2, 2) == e4_via_theta(2, 2)


def test_theta_e4_at_smallest_determinant():
    t = theta_operator(eisenstein_qexp(4, 2, 2))
    vals = {t[h] for h in enumerate_indices(2, 2) if det3(h) == 2}
    assert vals == {4320}


def test_unsupported_weight():
    with pytest.raises(UnsupportedWeightError):
        eisenstein_qexp(8, 1, 1)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        eisenstein_coefficient(4, (1, 1, 4, 0))


@pytest.mark.parametrize("k", [4, 6, 10, 12])
def test_symmetric(k):
    assert symmetry_type(eisenstein_qexp(k, 2, 2)) == "symmetric"


def test_cusp_forms():
    for f in (f10_qexp(2, 2), f12_qexp(2, 2)):
        assert not any(phi_operator(f))
        assert not any(c for h, c in f.items() if det3(h) == 0)


def test_f12_normalized():
    f = f12_normalized(2, 2)
    assert all(c.denominator == 1 for _, c in f.items())
    assert f[(1, 1, 2, 0)] == 1
    assert f[(1, 1, 0, 0)] == 18
    assert f == f12_qexp(2, 2).scale(F12_NORMALIZER)


def test_mass_weights_sum_to_one():
    assert sum(MASS_WEIGHTS.values()) == 1
    assert all(w > 0 for w in MASS_WEIGHTS.values())


@pytest.mark.slow
def test_mass_formula(thetas):
    f = e12_via_mass_formula(2, 2, thetas=thetas, check=True)
    assert f == eisenstein_qexp(12, 2, 2)


@pytest.mark.slow
def test_mass_formula_detects_wrong_sign(thetas):
    wrong = dict(thetas)
    wrong["h1"] = thetas["h1"].scale(-1)
    with pytest.raises(IdentityError, match=r"\("):
        e12_via_mass_formula(2, 2, thetas=wrong, check=True)
