from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hermtheta.arith import (
    THETA,
    UNITS,
    EisensteinInt,
    KElement,
    NotDivisibleError,
    lift_residue,
    residue_mod_theta,
    theta_divide,
)

small = st.integers(-50, 50)
eis = st.builds(EisensteinInt, small, small)
nonzero = eis.filter(lambda z: not z.is_zero())
rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
kel = st.builds(KElement, rat, rat)


def test_omega_relation():
    w = EisensteinInt(0, 1)
    assert w * w == w - 1
    assert w * w * w == EisensteinInt(-1, 0)


def test_theta_squares_to_minus_three():
    assert THETA * THETA == EisensteinInt(-3, 0)
    assert THETA.norm() == 3


def test_units():
    assert len(set(UNITS)) == 6
    assert all(u.norm() == 1 for u in UNITS)


@given(eis, eis, eis)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(eis, eis)
def test_norm_multiplicative_and_conj(a, b):
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * a.conj()) == EisensteinInt(a.norm(), 0)
    assert (a * b).conj() == a.conj() * b.conj()


@given(eis, nonzero)
def test_euclidean_division(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.norm() < b.norm()


def test_exact_div():
    assert (EisensteinInt(3, 0)).exact_div(THETA) * THETA == EisensteinInt(3, 0)
    with pytest.raises(NotDivisibleError):
        EisensteinInt(1, 0).exact_div(THETA)
    with pytest.raises(ZeroDivisionError):
        EisensteinInt(1, 0).divmod(EisensteinInt(0, 0))


@given(eis)
def test_residue_mod_theta(a):
    r = residue_mod_theta(a)
    assert r in (0, 1, 2)
    assert residue_mod_theta(a - lift_residue(r)) == 0
    # a - lift(r) is divisible by theta
    assert theta_divide(a - lift_residue(r)) * THETA == a - lift_residue(r)


@given(kel, kel, kel)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    if a != KElement(0):
        assert a * (KElement(1) / a) == KElement(1)


@given(kel)
def test_norm_and_real(a):
    n = (a * a.conj())
    assert n.is_rational()
    assert n.real() >= 0
    assert (a + a.conj()).real() == 2 * a.real()


def test_k_integrality():
    assert KElement(Fraction(3), Fraction(-2)).is_integral()
    assert not KElement(Fraction(1, 2), Fraction(0)).is_integral()
    inv_theta = KElement(1) / THETA.to_k()
    assert not inv_theta.is_integral()
    assert (inv_theta * THETA.to_k()) == KElement(1)
