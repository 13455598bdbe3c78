"""Published coefficient tables shipped as data.

Each fixture is an expansion JSON file whose records carry two extra fields:
``det3`` (rechecked on load) and ``factorization`` (the printed prime
factorization, also rechecked unless the row is flagged).  The forms behind
``table2``/``table3`` and the two leading expansions cannot be recomputed
here, so these files are never regenerated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .congruence import CheckReport, CheckRow
from .hindex import HermitianIndex, det3
from .qexp import QExpansion

__all__ = [
    "FIXTURE_NAMES",
    "FixtureIntegrityError",
    "FixtureRow",
    "TableFixture",
    "fixture_path",
    "load_fixture",
    "parse_factorization",
    "k_index",
    "phi9_leading",
    "verify_table1_against_enumeration",
]

FIXTURE_NAMES = ("table1", "table2", "table3", "phi9_leading", "phi45_leading")


class FixtureIntegrityError(ValueError):
    pass


def k_index(n: int) -> HermitianIndex:
    """``K_n = (1, n, 2, 0)``."""
    return HermitianIndex(1, n, 2, 0)


def parse_factorization(text: str) -> int:
    """Evaluate ``"-2^3*13"``-style products."""
    s = text.replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    val = 1
    for part in s.split("*"):
        base, _, exp = part.partition("^")
        val *= int(base) ** (int(exp) if exp else 1)
    return sign * val


@dataclass(frozen=True)
class FixtureRow:
    row: int
    index: HermitianIndex
    det3: int
    value: int
    factorization: str
    label: str = ""
    printed_decimal: int | None = None
    factorization_conflict: bool = False


@dataclass(frozen=True)
class TableFixture:
    name: str
    rows: tuple[FixtureRow, ...]
    header: dict

    @property
    def weight(self) -> int:
        return self.header["weight"]

    def row(self, index) -> FixtureRow:
        index = HermitianIndex(*index)
        for r in self.rows:
            if r.index == index:
                return r
        raise KeyError(f"{self.name} has no row {tuple(index)}")

    def to_expansion(self) -> QExpansion:
        """The listed coefficients as an expansion (unlisted indices read as zero)."""
        h = self.header
        return QExpansion(
            h["mmax"],
            h["nmax"],
            {r.index: Fraction(r.value) for r in self.rows},
            weight=h.get("weight"),
            char_exponent=h.get("char_exponent"),
            theta_depth=h.get("theta_depth", 0),
            description=h.get("description", ""),
        )


def fixture_path(name: str) -> Path:
    from .lattices.data import data_dir

    return data_dir() / "fixtures" / f"{name}.json"


def _parse(name: str, data: dict) -> TableFixture:
    rows = []
    for rec in data["coefficients"]:
        idx = HermitianIndex(rec["m"], rec["n"], rec["a"], rec["b"])
        row = FixtureRow(
            row=rec["row"],
            index=idx,
            det3=rec["det3"],
            value=rec["num"],
            factorization=rec["factorization"],
            label=rec.get("label", ""),
            printed_decimal=rec.get("printed_decimal"),
            factorization_conflict=rec.get("factorization_conflict", False),
        )
        where = f"{name} row {row.row} {tuple(idx)}"
        if det3(idx) != row.det3:
            raise FixtureIntegrityError(f"{where}: stored det3 {row.det3} != recomputed {det3(idx)}")
        if not row.factorization_conflict and parse_factorization(row.factorization) != row.value:
            raise FixtureIntegrityError(f"{where}: factorization {row.factorization} != value {row.value}")
        rows.append(row)
    return TableFixture(name, tuple(rows), dict(data["header"]))


@lru_cache(maxsize=None)
def _load(path: str, name: str) -> TableFixture:
    return _parse(name, json.loads(Path(path).read_text()))


def load_fixture(name: str) -> TableFixture:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; expected one of {FIXTURE_NAMES}")
    return _load(str(fixture_path(name)), name)


def phi9_leading(mmax: int = 1, nmax: int = 1) -> QExpansion:
    """The weight-9 skew cusp form on the rectangle ``(1, 1)``, where it is known exactly."""
    if (mmax, nmax) != (1, 1):
        raise ValueError("only the (1, 1) truncation of phi9 is available")
    return load_fixture("phi9_leading").to_expansion().with_meta(description="phi9")


def verify_table1_against_enumeration(theta: QExpansion | None = None, threads: int | None = None) -> CheckReport:
    """Compare the Leech-lattice table against an enumerated theta series on ``(2, 2)``."""
    if theta is None:
        from .lattices.data import load_standard
        from .lattices.theta import theta_expansion

        theta = theta_expansion(load_standard("h5"), 2, 2, threads=threads)
    rep = CheckReport("table1 vs enumeration")
    for r in load_fixture("table1").rows:
        got = theta[r.index]
        label = f"{tuple(r.index)}"
        if r.printed_decimal is not None:
            label += f" (printed decimal {r.printed_decimal} superseded)"
        rep.rows.append(CheckRow(label, r.value, got, got == r.value))
    return rep
