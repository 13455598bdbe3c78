from __future__ import annotations

import json
import shutil

import pytest

from hermtheta.fixtures import (
    FIXTURE_NAMES,
    FixtureIntegrityError,
    fixture_path,
    k_index,
    load_fixture,
    parse_factorization,
    phi9_leading,
    verify_table1_against_enumeration,
)
from hermtheta.hindex import det3
from hermtheta.qexp import QExpansion, symmetry_type


def test_all_fixtures_load():
    sizes = {name: len(load_fixture(name).rows) for name in FIXTURE_NAMES}
    assert sizes == {"table1": 6, "table2": 20, "table3": 11, "phi9_leading": 6, "phi45_leading": 11}
    assert sum(sizes[n] for n in ("table1", "table2", "table3")) == 37


def test_fixture_files_are_expansion_json():
    for name in FIXTURE_NAMES:
        data = json.loads(fixture_path(name).read_text())
        QExpansion.from_json(data)
        assert all("factorization" in r and "det3" in r for r in data["coefficients"])


def test_examples():
    t2 = load_fixture("table2")
    assert t2.row(k_index(13)).value == -33176
    assert parse_factorization(t2.row(k_index(13)).factorization) == -33176
    assert load_fixture("table1").row((2, 2, 5, 1)).value == 0
    assert load_fixture("table3").row((5, 6, -7, -1)).det3 == 77


def test_det3_column():
    for name in FIXTURE_NAMES:
        for r in load_fixture(name).rows:
            assert r.det3 == det3(r.index)


def test_table2_values_even_where_det3_odd():
    for r in load_fixture("table2").rows:
        assert r.index == k_index(r.index.n)
        if (3 * r.index.n - 1) % 2:
            assert r.value % 2 == 0


def test_table3_divisibility():
    for r in load_fixture("table3").rows:
        assert (r.det3 * r.value) % 11 == 0


def test_table1_conflict_is_recorded():
    r = load_fixture("table1").row((2, 2, 0, 0))
    assert r.value == 9807557760 == parse_factorization(r.factorization)
    assert r.printed_decimal == 980755760
    assert r.value % 196560 == 0 and r.printed_decimal % 196560 != 0


def test_table2_sign_conflict_is_flagged():
    r = load_fixture("table2").row(k_index(4))
    assert r.value == 320 and r.factorization_conflict
    assert parse_factorization(r.factorization) == -320


def test_phi9_leading():
    f = phi9_leading(1, 1)
    assert f[(1, 1, -2, 0)] == 1 and f[(1, 1, 2, 0)] == -1
    assert symmetry_type(f) == "skew"
    assert f.weight == 9
    with pytest.raises(ValueError):
        phi9_leading(2, 2)


def test_phi45_leading_partial():
    rows = load_fixture("phi45_leading").rows
    assert all(det3(r.index) == 33 for r in rows)
    assert all(abs(r.value) == 1 for r in rows)


def test_integrity_failure_names_row(tmp_path, monkeypatch):
    src = fixture_path("table3").parent.parent
    dst = tmp_path / "data"
    shutil.copytree(src, dst)
    p = dst / "fixtures" / "table3.json"
    data = json.loads(p.read_text())
    data["coefficients"][4]["det3"] = 58
    p.write_text(json.dumps(data))
    monkeypatch.setenv("HERMTHETA_DATA", str(dst))
    with pytest.raises(FixtureIntegrityError, match=r"row 5 \(4, 5, 0, -2\)"):
        load_fixture("table3")


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("table4")


@pytest.mark.slow
def test_table1_against_enumeration(thetas):
    rep = verify_table1_against_enumeration(thetas["h5"])
    assert rep.passed and len(rep.rows) == 6
