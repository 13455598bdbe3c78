"""Eisenstein lattices given by a Hermitian Gram matrix over ``Q(sqrt(-3))``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from ..arith import KElement

__all__ = [
    "EisensteinLattice",
    "LatticeValidationError",
    "hermitian_det",
    "load_gram",
    "save_gram",
    "orthogonal_sum",
    "omega_matrix",
]


class LatticeValidationError(ValueError):
    """A Gram matrix violates one of the Eisenstein lattice axioms."""

    def __init__(self, axiom: str, detail: str):
        super().__init__(f"{axiom} axiom violated: {detail}")
        self.axiom = axiom


def hermitian_det(rows: Sequence[Sequence[KElement]]) -> KElement:
    """Determinant over ``K`` by fraction-exact Gaussian elimination."""
    a = [[KElement.coerce(x) for x in row] for row in rows]
    n = len(a)
    d = KElement(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
        if piv is None:
            return KElement(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        p = a[c][c]
        d = d * p
        inv = p.inverse()
        for i in range(c + 1, n):
            if a[i][c].is_zero():
                continue
            f = a[i][c] * inv
            a[i] = [a[i][j] - f * a[c][j] for j in range(n)]
    return d


def omega_matrix(rank: int) -> np.ndarray:
    """Multiplication by ``w`` on coordinates ``(c_1..c_r, d_1..d_r)`` of ``sum (c_j + d_j w) b_j``."""
    r = rank
    w = np.zeros((2 * r, 2 * r), dtype=np.int64)
    eye = np.eye(r, dtype=np.int64)
    w[:r, r:] = -eye
    w[r:, :r] = eye
    w[r:, r:] = eye
    return w


@dataclass(frozen=True, eq=False)
class EisensteinLattice:
    """Free ``O_K``-lattice with Hermitian Gram ``gram[j][k] = <b_j, b_k>`` (conjugate-linear in ``j``)."""

    gram: tuple[tuple[KElement, ...], ...]
    name: str = ""

    def __post_init__(self):
        g = tuple(tuple(KElement.coerce(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __eq__(self, other) -> bool:
        return isinstance(other, EisensteinLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    @cached_property
    def real_gram(self) -> np.ndarray:
        """Integer Gram matrix of ``Re <x, y>`` on the Z-basis ``(b_1..b_r, w b_1..w b_r)``.

        Raises :class:`LatticeValidationError` if an entry is not an integer.
        """
        r = self.rank
        out = np.zeros((2 * r, 2 * r), dtype=object)
        omega = KElement(0, 1)
        for j in range(r):
            for k in range(r):
                h = self.gram[j][k]
                entries = (
                    (j, k, h),
                    (j, r + k, omega * h),
                    (r + j, k, omega.conj() * h),
                    (r + j, r + k, h),
                )
                for p, q, z in entries:
                    v = z.real()
                    if v.denominator != 1:
                        raise LatticeValidationError(
                            "even", f"Re<x,y> = {v} is not integral at basis pair ({p},{q})"
                        )
                    out[p, q] = int(v)
        return out.astype(np.int64)

    @cached_property
    def omega(self) -> np.ndarray:
        return omega_matrix(self.rank)

    def validate(self) -> EisensteinLattice:
        """Check Hermitian positivity, unimodularity and evenness; raise :class:`LatticeValidationError` naming the failure."""
        r = self.rank
        for j in range(r):
            for k in range(r):
                if self.gram[j][k] != self.gram[k][j].conj():
                    raise LatticeValidationError("hermitian", f"Gram not Hermitian at ({j},{k})")
        if r == 0:
            return self
        g = self.real_gram  # may raise ("even")
        for p in range(2 * r):
            if g[p, p] % 2:
                raise LatticeValidationError("even", f"odd norm {g[p, p]} on basis vector {p}")
        # exact positive definiteness via rational LDL^T
        a = [[Fraction(int(x)) for x in row] for row in g]
        n = 2 * r
        for c in range(n):
            if a[c][c] <= 0:
                raise LatticeValidationError("positive", "Gram matrix is not positive definite")
            for i in range(c + 1, n):
                f = a[i][c] / a[c][c]
                if f:
                    for j in range(c, n):
                        a[i][j] -= f * a[c][j]
        d = hermitian_det(self.gram)
        if not d.is_rational() or d.x <= 0 or d.x * d.x != Fraction(4, 3) ** r:
            raise LatticeValidationError("unimodular", f"det(Gram) = {d}, expected (2/sqrt(-3))^{r}")
        return self

    def norm(self, coords: np.ndarray) -> np.ndarray:
        """``<v, v>`` for rows of Z-realization coordinates."""
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        return np.einsum("ij,jk,ik->i", coords, self.real_gram, coords)

    def to_json(self) -> dict:
        entries = []
        for row in self.gram:
            for z in row:
                entries.append([z.x.numerator, z.x.denominator, z.y.numerator, z.y.denominator])
        return {"rank": self.rank, "name": self.name, "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> EisensteinLattice:
        r = int(data["rank"])
        entries = data["entries"]
        if len(entries) != r * r:
            raise ValueError(f"expected {r * r} Gram entries, found {len(entries)}")
        rows = []
        for j in range(r):
            row = []
            for xn, xd, yn, yd in entries[j * r : (j + 1) * r]:
                row.append(KElement(Fraction(xn, xd), Fraction(yn, yd)))
            rows.append(tuple(row))
        return cls(tuple(rows), name=data.get("name", ""))


def load_gram(path: str | Path, validate: bool = True) -> EisensteinLattice:
    try:
        data = json.loads(Path(path).read_text())
        lat = EisensteinLattice.from_json(data)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, LatticeValidationError):
            raise
        raise ValueError(f"cannot parse Gram file {path}: {exc}") from exc
    if not lat.name:
        lat = EisensteinLattice(lat.gram, name=Path(path).stem)
    return lat.validate() if validate else lat


def save_gram(lat: EisensteinLattice, path: str | Path) -> None:
    Path(path).write_text(json.dumps(lat.to_json()) + "\n")


def orthogonal_sum(*lats: EisensteinLattice, name: str = "") -> EisensteinLattice:
    r = sum(l.rank for l in lats)
    rows = [[KElement(0)] * r for _ in range(r)]
    off = 0
    for l in lats:
        for j in range(l.rank):
            for k in range(l.rank):
                rows[off + j][off + k] = l.gram[j][k]
        off += l.rank
    return EisensteinLattice(tuple(tuple(row) for row in rows), name=name)
