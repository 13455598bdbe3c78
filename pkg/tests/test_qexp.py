from __future__ import annotations

import json
import random
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermtheta.hindex import HermitianIndex, conj_transpose_index, det3, enumerate_indices
from hermtheta.lattices.data import load_standard
from hermtheta.lattices.enumerate import short_vectors
from hermtheta.lattices.theta import index_forms, theta_expansion
from hermtheta.qexp import (
    MetadataWarning,
    QExpansion,
    SiegelRestriction,
    TruncationError,
    dump_expansion,
    linear_combination,
    load_expansion,
    phi_operator,
    restrict_to_siegel,
    symmetry_type,
    theta_operator,
)
from hermtheta.reproduce import random_expansion

seeds = st.integers(0, 2**32 - 1)


def _rand(seed, m=2, n=2, terms=6):
    return random_expansion(random.Random(seed), m, n, terms=terms)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_ring_laws(seed):
    rng = random.Random(seed)
    f, g, h = (random_expansion(rng, 2, 2) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f + QExpansion.zero(2, 2) == f
    assert f * QExpansion.one(2, 2) == f
    assert f - f == QExpansion.zero(2, 2)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_truncation_commutes_with_product(seed):
    f, g = _rand(seed), _rand(seed + 1)
    assert (f * g).truncate(1, 2) == f.truncate(1, 2) * g.truncate(1, 2)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_json_round_trip(seed):
    f = _rand(seed).with_meta(weight=4, char_exponent=1, description="x")
    g = QExpansion.from_json(json.loads(f.dumps()))
    assert g == f and g.weight == 4 and g.char_exponent == 1 and g.description == "x"


def test_dump_load(tmp_path):
    f = QExpansion.monomial((1, 1, 2, 0), 1, 1, Fraction(-3, 7))
    dump_expansion(f, tmp_path / "f.json")
    assert load_expansion(tmp_path / "f.json") == f


def test_records_are_canonically_ordered():
    f = _rand(7, terms=12)
    recs = f.to_json()["coefficients"]
    keys = [(r["m"], r["n"], r["b"], r["a"]) for r in recs]
    assert keys == sorted(keys)


def test_validation():
    with pytest.raises(TruncationError):
        QExpansion(1, 1, {(2, 0, 0, 0): 1})
    with pytest.raises(TruncationError):
        QExpansion(1, 1, {(1, 1, 4, 0): 1})  # det < 0
    with pytest.raises(ValueError):
        QExpansion(1, 1, {(1, 1, 1, 0): 1})  # a, b parity
    with pytest.raises(TruncationError):
        QExpansion.zero(1, 1) + QExpansion.zero(1, 2)
    with pytest.raises(TruncationError):
        QExpansion.zero(1, 1).truncate(2, 2)
    assert QExpansion(1, 1, {(1, 1, 0, 0): 0}).is_zero()


def test_metadata_warning():
    with pytest.warns(MetadataWarning):
        QExpansion(1, 1, {(0, 0, 0, 0): 1}, weight=4, char_exponent=0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        QExpansion(1, 1, {(0, 0, 0, 0): 1}, weight=4, char_exponent=1)


def test_weights_add_under_product():
    f = QExpansion(1, 1, {(0, 0, 0, 0): 1}, weight=4, char_exponent=1)
    assert (f * f).weight == 8 and (f * f).char_exponent == 2


def test_theta_operator():
    f = QExpansion(1, 1, {h: 1 for h in enumerate_indices(1, 1)}, weight=4, char_exponent=1)
    t = theta_operator(f)
    assert t.theta_depth == 1 and t.weight == 4
    for h in enumerate_indices(1, 1):
        assert t[h] == Fraction(det3(h), 3)
    assert t[(1, 0, 0, 0)] == 0


def test_phi_operator():
    f = QExpansion(2, 1, {(0, 0, 0, 0): 1, (1, 0, 0, 0): 5, (2, 0, 0, 0): 7, (1, 1, 0, 0): 3})
    assert phi_operator(f) == [1, 5, 7]


def test_symmetry_type():
    h = HermitianIndex(1, 1, 2, 0)
    g = conj_transpose_index(h)
    assert symmetry_type(QExpansion(1, 1, {h: 1, g: 1})) == "symmetric"
    assert symmetry_type(QExpansion(1, 1, {h: 1, g: -1})) == "skew"
    assert symmetry_type(QExpansion(1, 1, {h: 1, g: 2})) == "neither"
    assert symmetry_type(QExpansion.zero(1, 1)) == "symmetric"


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_restriction_is_a_ring_map(seed):
    f, g = _rand(seed), _rand(seed + 1)
    assert restrict_to_siegel(f * g) == restrict_to_siegel(f) * restrict_to_siegel(g)


def test_siegel_json_round_trip():
    r = restrict_to_siegel(_rand(3))
    assert SiegelRestriction.from_json(r.to_json()) == r


def test_restriction_matches_real_pair_count():
    # restricting the Hermitian theta series gives the Siegel theta series of the real lattice
    lat = load_standard("s4")
    res = restrict_to_siegel(theta_expansion(lat, 1, 2, threads=1))
    sh = short_vectors(lat, 4)
    _, gb = index_forms(lat)
    zero = np.zeros((1, 2 * lat.rank), dtype=np.int64)
    vecs = {0: zero, 1: sh.full(2), 2: sh.full(4)}
    for m in range(2):
        for n in range(3):
            b = (vecs[m] @ gb @ vecs[n].T).ravel()
            vals, counts = np.unique(b, return_counts=True)
            expected = {(m, n, int(v)): int(c) for v, c in zip(vals, counts)}
            got = {k: v for k, v in res.coeffs.items() if k[:2] == (m, n)}
            assert got == expected


def test_linear_combination():
    f = QExpansion.monomial((0, 0, 0, 0), 1, 1)
    assert linear_combination([(Fraction(1, 2), f), (Fraction(1, 2), f)]) == f
    with pytest.raises(ValueError):
        linear_combination([])
