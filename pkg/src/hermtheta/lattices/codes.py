"""Linear codes over F_3 used as input to construction A."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "TernaryCode",
    "tetracode",
    "golay12",
    "triples_glued_by_tetracode",
    "direct_sum",
    "load_code",
    "save_code",
]


def _rref_mod3(rows: np.ndarray) -> np.ndarray:
    a = np.array(rows, dtype=np.int64) % 3
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0)
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * a[r, c]) % 3  # inverse of 1 is 1, of 2 is 2
        for i in range(nrows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % 3
        r += 1
        if r == nrows:
            break
    return a[:r]


@dataclass(frozen=True)
class TernaryCode:
    length: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) % 3 for x in g) for g in self.generators)
        for g in gens:
            if len(g) != self.length:
                raise ValueError(f"generator {g} has length {len(g)}, expected {self.length}")
        object.__setattr__(self, "generators", gens)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.generators, dtype=np.int64).reshape(len(self.generators), self.length)

    def reduced(self) -> np.ndarray:
        """Row-reduced echelon basis."""
        return _rref_mod3(self.matrix)

    @property
    def dimension(self) -> int:
        return len(self.reduced())

    def codewords(self) -> np.ndarray:
        basis = self.reduced()
        k = len(basis)
        if k == 0:
            return np.zeros((1, self.length), dtype=np.int64)
        coeffs = np.array(list(itertools.product(range(3), repeat=k)), dtype=np.int64)
        return (coeffs @ basis) % 3

    def weight_distribution(self) -> dict[int, int]:
        w = np.count_nonzero(self.codewords(), axis=1)
        vals, counts = np.unique(w, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def is_self_orthogonal(self) -> bool:
        g = self.matrix
        return not np.any((g @ g.T) % 3)

    def is_self_dual(self) -> bool:
        return self.is_self_orthogonal() and 2 * self.dimension == self.length

    def contains(self, word) -> bool:
        basis = self.reduced()
        ext = _rref_mod3(np.vstack([basis, np.array(word, dtype=np.int64).reshape(1, -1)]))
        return len(ext) == len(basis)


def tetracode() -> TernaryCode:
    return TernaryCode(4, ((1, 0, 1, 1), (0, 1, 1, 2)))


def golay12() -> TernaryCode:
    """The extended ternary Golay code ``[12, 6, 6]``.

    Column 7 is negated relative to the textbook Paley form so that the
    all-ones word is a codeword.
    """
    a = (
        (0, 1, 1, 1, 1, 1),
        (2, 0, 1, 2, 2, 1),
        (2, 1, 0, 1, 2, 2),
        (2, 2, 1, 0, 1, 2),
        (2, 2, 2, 1, 0, 1),
        (2, 1, 2, 2, 1, 0),
    )
    gens = []
    for i in range(6):
        row = [0] * 6
        row[i] = 1
        gens.append(tuple(row) + a[i])
    return TernaryCode(12, tuple(gens))


def triples_glued_by_tetracode() -> TernaryCode:
    """Self-dual length-12 code: four blocks ``(1,1,1)`` glued by the tetracode on ``(0,1,2)``.

    Its only weight-3 words are the eight block words, so construction A yields
    root system ``4 E6``.
    """
    gens = []
    for blk in range(4):
        row = [0] * 12
        row[3 * blk : 3 * blk + 3] = [1, 1, 1]
        gens.append(tuple(row))
    for t in tetracode().generators:
        row = []
        for c in t:
            row.extend([0, c % 3, (2 * c) % 3])
        gens.append(tuple(row))
    return TernaryCode(12, tuple(gens))


def direct_sum(*codes: TernaryCode) -> TernaryCode:
    n = sum(c.length for c in codes)
    gens = []
    offset = 0
    for c in codes:
        for g in c.generators:
            row = [0] * n
            row[offset : offset + c.length] = g
            gens.append(tuple(row))
        offset += c.length
    return TernaryCode(n, tuple(gens))


def save_code(code: TernaryCode, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps({"length": code.length, "generators": [list(g) for g in code.generators]}) + "\n"
    )


def load_code(path: str | Path) -> TernaryCode:
    data = json.loads(Path(path).read_text())
    return TernaryCode(int(data["length"]), tuple(tuple(g) for g in data["generators"]))
