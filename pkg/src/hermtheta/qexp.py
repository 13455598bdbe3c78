"""Truncated generalized q-expansions with exact rational coefficients.

A :class:`QExpansion` stores the coefficients ``a(F; H)`` for every index ``H``
with ``m <= mmax`` and ``n <= nmax``; missing keys are zero.  Weight and
character metadata ride along but never change the arithmetic.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .hindex import (
    HermitianIndex,
    check_index,
    conj_transpose_index,
    det3,
    enumerate_indices,
    sort_key,
)

__all__ = [
    "QExpansion",
    "SiegelRestriction",
    "TruncationError",
    "MetadataWarning",
    "theta_operator",
    "restrict_to_siegel",
    "phi_operator",
    "symmetry_type",
    "load_expansion",
    "dump_expansion",
]


class TruncationError(ValueError):
    pass


class MetadataWarning(UserWarning):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class QExpansion:
    """Truncated expansion ``sum a(F; H) q^H`` over the rectangle ``m <= mmax, n <= nmax``.

    ``weight`` and ``char_exponent`` may be ``None`` for formal series (table
    data, differences of forms of unknown weight).  ``theta_depth`` counts how
    often the theta operator was applied; mod ``p`` such a series behaves like
    a form of weight ``weight + theta_depth * (p + 1)``.
    """

    mmax: int
    nmax: int
    coeffs: Mapping[HermitianIndex, Fraction] = field(default_factory=dict)
    weight: int | None = None
    char_exponent: int | None = None
    theta_depth: int = 0
    description: str = ""

    def __post_init__(self):
        if self.mmax < 0 or self.nmax < 0:
            raise TruncationError("truncation bounds must be non-negative")
        clean: dict[HermitianIndex, Fraction] = {}
        for h, c in self.coeffs.items():
            h = check_index(h)
            if h.m > self.mmax or h.n > self.nmax or h.m < 0 or h.n < 0:
                raise TruncationError(f"index {h} outside rectangle ({self.mmax},{self.nmax})")
            if det3(h) < 0:
                raise TruncationError(f"index {h} is not positive semidefinite")
            c = _frac(c)
            if c:
                clean[h] = c
        object.__setattr__(self, "coeffs", clean)
        if self.char_exponent is not None:
            object.__setattr__(self, "char_exponent", self.char_exponent % 3)
        if (
            self.weight is not None
            and self.char_exponent is not None
            and self.theta_depth == 0
            and clean
            and (self.weight - self.char_exponent) % 3
        ):
            warnings.warn(
                f"nonzero expansion with weight {self.weight} and character exponent "
                f"{self.char_exponent}: the space is zero unless k = l (mod 3)",
                MetadataWarning,
                stacklevel=3,
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, mmax: int, nmax: int, **meta) -> QExpansion:
        return cls(mmax, nmax, {}, **meta)

    @classmethod
    def one(cls, mmax: int, nmax: int) -> QExpansion:
        return cls(mmax, nmax, {HermitianIndex(0, 0, 0, 0): Fraction(1)}, weight=0, char_exponent=0)

    @classmethod
    def monomial(cls, h, mmax: int, nmax: int, c=1) -> QExpansion:
        return cls(mmax, nmax, {check_index(h): _frac(c)})

    # -- access -----------------------------------------------------------

    def __getitem__(self, h) -> Fraction:
        return self.coeffs.get(HermitianIndex(*h), Fraction(0))

    def items(self):
        """Nonzero coefficients in canonical ``(m, n, b, a)`` order."""
        return sorted(self.coeffs.items(), key=lambda kv: sort_key(kv[0]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (self.mmax, self.nmax) == (other.mmax, other.nmax) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.mmax, self.nmax, frozenset(self.coeffs.items())))

    def truncate(self, mmax: int, nmax: int) -> QExpansion:
        if mmax > self.mmax or nmax > self.nmax:
            raise TruncationError(
                f"cannot extend truncation ({self.mmax},{self.nmax}) to ({mmax},{nmax})"
            )
        kept = {h: c for h, c in self.coeffs.items() if h.m <= mmax and h.n <= nmax}
        return replace(self, mmax=mmax, nmax=nmax, coeffs=kept)

    def with_meta(self, **meta) -> QExpansion:
        return replace(self, **meta)

    # -- ring operations --------------------------------------------------

    def _check_same(self, other: QExpansion) -> None:
        if (self.mmax, self.nmax) != (other.mmax, other.nmax):
            raise TruncationError(
                f"truncation mismatch: ({self.mmax},{self.nmax}) vs ({other.mmax},{other.nmax})"
            )

    def _sum_meta(self, other: QExpansion) -> dict:
        keys = ("weight", "char_exponent", "theta_depth")
        mine = tuple(getattr(self, k) for k in keys)
        theirs = tuple(getattr(other, k) for k in keys)
        if mine == theirs:
            return dict(zip(keys, mine))
        if self.is_zero():
            return dict(zip(keys, theirs))
        if other.is_zero():
            return dict(zip(keys, mine))
        return {"weight": None, "char_exponent": None, "theta_depth": 0}

    def __add__(self, other: QExpansion) -> QExpansion:
        self._check_same(other)
        out = dict(self.coeffs)
        for h, c in other.coeffs.items():
            out[h] = out.get(h, 0) + c
        return QExpansion(self.mmax, self.nmax, out, **self._sum_meta(other))

    def __neg__(self) -> QExpansion:
        return self.scale(-1)

    def __sub__(self, other: QExpansion) -> QExpansion:
        return self + (-other)

    def scale(self, c) -> QExpansion:
        c = _frac(c)
        return replace(self, coeffs={h: c * v for h, v in self.coeffs.items()})

    def __rmul__(self, c) -> QExpansion:
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other) -> QExpansion:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, e: int) -> QExpansion:
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = QExpansion.one(self.mmax, self.nmax)
        for _ in range(e):
            out = out * self
        return out

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        records = []
        for h, c in self.items():
            rec = {"m": h.m, "n": h.n, "a": h.a, "b": h.b, "num": c.numerator}
            if c.denominator != 1:
                rec["den"] = c.denominator
            records.append(rec)
        return {
            "header": {
                "weight": self.weight,
                "char_exponent": self.char_exponent,
                "theta_depth": self.theta_depth,
                "mmax": self.mmax,
                "nmax": self.nmax,
                "description": self.description,
            },
            "coefficients": records,
        }

    def dumps(self) -> str:
        """Canonical JSON text: header block, then one coefficient record per line."""
        data = self.to_json()
        body = ",\n".join("  " + json.dumps(r) for r in data["coefficients"])
        head = json.dumps(data["header"], indent=2).replace("\n", "\n ")
        return '{\n "header": ' + head + ',\n "coefficients": [\n' + body + ("\n" if body else "") + " ]\n}\n"

    @classmethod
    def from_json(cls, data: dict) -> QExpansion:
        hdr = data["header"]
        coeffs = {}
        for rec in data["coefficients"]:
            h = HermitianIndex(rec["m"], rec["n"], rec["a"], rec["b"])
            coeffs[h] = Fraction(rec["num"], rec.get("den", 1))
        return cls(
            hdr["mmax"],
            hdr["nmax"],
            coeffs,
            weight=hdr.get("weight"),
            char_exponent=hdr.get("char_exponent"),
            theta_depth=hdr.get("theta_depth", 0),
            description=hdr.get("description", ""),
        )


def _add_meta(x, y):
    return None if x is None or y is None else x + y


def mul(f: QExpansion, g: QExpansion) -> QExpansion:
    """Cauchy product; exact on the whole rectangle since ``m`` and ``n`` only grow."""
    f._check_same(g)
    mmax, nmax = f.mmax, f.nmax
    out: dict[HermitianIndex, Fraction] = {}
    gitems = sorted(g.coeffs.items(), key=lambda kv: sort_key(kv[0]))
    for h1, c1 in f.coeffs.items():
        m1, n1, a1, b1 = h1
        for (m2, n2, a2, b2), c2 in gitems:
            m, n = m1 + m2, n1 + n2
            if m > mmax or n > nmax:
                continue
            key = HermitianIndex(m, n, a1 + a2, b1 + b2)
            out[key] = out.get(key, 0) + c1 * c2
    if f.theta_depth or g.theta_depth:
        meta = {"weight": None, "char_exponent": None}
    else:
        meta = {
            "weight": _add_meta(f.weight, g.weight),
            "char_exponent": _add_meta(f.char_exponent, g.char_exponent),
        }
    return QExpansion(mmax, nmax, out, **meta)


def theta_operator(f: QExpansion) -> QExpansion:
    """Multiply every coefficient by ``det(H)``."""
    out = {h: Fraction(det3(h), 3) * c for h, c in f.coeffs.items()}
    desc = f"Theta({f.description})" if f.description else ""
    return replace(f, coeffs=out, theta_depth=f.theta_depth + 1, description=desc)


@dataclass(frozen=True)
class SiegelRestriction:
    """Coefficients of ``F`` restricted to symmetric ``Z``, keyed by ``(m, n, b)``.

    The off-diagonal entry of the real index is ``b / 2``.
    """

    mmax: int
    nmax: int
    coeffs: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (m, n, b), c in self.coeffs.items():
            if b * b > 4 * m * n:
                raise TruncationError(f"Siegel index {(m, n, b)} not semidefinite")
            c = _frac(c)
            if c:
                clean[(m, n, b)] = c
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, key) -> Fraction:
        return self.coeffs.get(tuple(key), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: SiegelRestriction) -> SiegelRestriction:
        out: dict = {}
        for (m1, n1, b1), c1 in self.coeffs.items():
            for (m2, n2, b2), c2 in other.coeffs.items():
                m, n = m1 + m2, n1 + n2
                if m > self.mmax or n > self.nmax:
                    continue
                k = (m, n, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return SiegelRestriction(self.mmax, self.nmax, out)

    def to_json(self) -> dict:
        recs = []
        for (m, n, b), c in sorted(self.coeffs.items()):
            rec = {"m": m, "n": n, "b": b, "num": c.numerator}
            if c.denominator != 1:
                rec["den"] = c.denominator
            recs.append(rec)
        return {"header": {"mmax": self.mmax, "nmax": self.nmax, "kind": "siegel"}, "coefficients": recs}

    @classmethod
    def from_json(cls, data: dict) -> SiegelRestriction:
        hdr = data["header"]
        coeffs = {(r["m"], r["n"], r["b"]): Fraction(r["num"], r.get("den", 1)) for r in data["coefficients"]}
        return cls(hdr["mmax"], hdr["nmax"], coeffs)


def restrict_to_siegel(f: QExpansion) -> SiegelRestriction:
    out: dict[tuple[int, int, int], Fraction] = {}
    for (m, n, a, b), c in f.coeffs.items():
        out[(m, n, b)] = out.get((m, n, b), 0) + c
    return SiegelRestriction(f.mmax, f.nmax, out)


def phi_operator(f: QExpansion) -> list[Fraction]:
    """Siegel Phi: the coefficients ``a(F; (m, 0, 0, 0))`` for ``m = 0..mmax``."""
    return [f[(m, 0, 0, 0)] for m in range(f.mmax + 1)]


def symmetry_type(f: QExpansion) -> str:
    """``'symmetric'``, ``'skew'`` or ``'neither'`` under ``Z -> Z^T``."""
    sym = all(f[conj_transpose_index(h)] == c for h, c in f.coeffs.items())
    if sym:
        return "symmetric"
    skew = all(f[conj_transpose_index(h)] == -c for h, c in f.coeffs.items())
    return "skew" if skew else "neither"


def indices(f: QExpansion) -> list[HermitianIndex]:
    return enumerate_indices(f.mmax, f.nmax)


def dump_expansion(f: QExpansion, path: str | Path) -> None:
    Path(path).write_text(f.dumps())


def load_expansion(path: str | Path) -> QExpansion:
    return QExpansion.from_json(json.loads(Path(path).read_text()))


def linear_combination(terms: Iterable[tuple[Fraction, QExpansion]]) -> QExpansion:
    terms = list(terms)
    out = None
    for c, f in terms:
        g = f.scale(c)
        out = g if out is None else out + g
    if out is None:
        raise ValueError("empty linear combination")
    return out
