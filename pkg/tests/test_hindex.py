from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from hermtheta.hindex import (
    HermitianIndex,
    InvalidIndexError,
    cell_indices,
    check_index,
    conj_transpose_index,
    content,
    det,
    det3,
    enumerate_indices,
    orbit_members,
    sort_key,
    unit_multiply,
    unit_orbit,
)

RECT = enumerate_indices(3, 3)
index = st.sampled_from(RECT)


def test_unit_rectangle_has_16_indices():
    assert len(enumerate_indices(1, 1)) == 16
    assert len(enumerate_indices(0, 0)) == 1


def test_enumeration_is_canonical_and_psd():
    idx = enumerate_indices(2, 3)
    assert idx == sorted(idx, key=sort_key)
    assert len(set(idx)) == len(idx)
    assert all(det3(h) >= 0 for h in idx)
    assert set(idx) == {h for m in range(3) for n in range(4) for h in cell_indices(m, n)}


def test_det3_examples():
    assert det3((1, 1, 2, 0)) == 2
    assert det3((5, 6, -7, -1)) == 77
    assert det3((3, 4, 0, 2)) == 33
    assert det((1, 1, 2, 0)) * 3 == 2


def test_parity_rule():
    with pytest.raises(InvalidIndexError):
        check_index((1, 1, 1, 0))
    assert check_index((1, 1, 1, 1)) == HermitianIndex(1, 1, 1, 1)


@given(index)
def test_det3_residues(h):
    assert det3(h) % 3 in (0, 2)


@given(index)
def test_conj_transpose_is_involution(h):
    assert conj_transpose_index(conj_transpose_index(h)) == h
    assert det3(conj_transpose_index(h)) == det3(h)


@given(index)
def test_unit_orbit(h):
    members = orbit_members(h)
    assert h in members
    assert all(det3(g) == det3(h) and content(g) == content(h) for g in members)
    assert unit_orbit(h) == min(members, key=sort_key)
    assert all(unit_orbit(g) == unit_orbit(h) for g in members)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_unit_multiply_has_order_six(a, b):
    if (a - b) % 2:
        return
    x = (a, b)
    for _ in range(6):
        x = unit_multiply(*x, 1)
    assert x == (a, b)
    assert unit_multiply(a, b, 3) == (-a, -b)


def test_content():
    assert content((0, 0, 0, 0)) == 0
    assert content((2, 2, 0, 0)) == 2
    assert content((1, 1, 2, 0)) == 1
