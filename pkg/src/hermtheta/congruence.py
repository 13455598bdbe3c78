"""Congruences of q-expansions modulo a prime and Sturm-bound certificates.

A congruence ``F = G (mod p)`` between p-integral expansions means equality of
all coefficient residues.  A finite check becomes a proof only through a
Sturm bound: for weight ``k`` it suffices to compare indices with
``m, n <= floor(k/9)`` (even weight, symmetric forms, ``p >= 5``) or
``m, n <= floor(k/9) - 1`` (odd weight).  Every verdict records which bound
was used and downgrades to a plain coefficient-range check whenever a
hypothesis cannot be read off the metadata.

The theta operator raises the weight mod ``p`` by ``p + 1``: ``Theta(F)`` is
congruent to a cusp form of weight ``k + p + 1``.  That is the weight used
by :func:`verify_theta_kernel` and for expansions carrying ``theta_depth``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .hindex import HermitianIndex, det3, enumerate_indices
from .qexp import QExpansion, TruncationError, symmetry_type, theta_operator

__all__ = [
    "NotPIntegralError",
    "ModPExpansion",
    "reduce_mod_p",
    "sturm_bound",
    "CongruenceVerdict",
    "effective_weight",
    "congruent_mod_p",
    "verify_theta_kernel",
    "CheckRow",
    "CheckReport",
    "check_table_congruences",
]

PROVEN, REFUTED, INCONCLUSIVE = "proven", "refuted", "inconclusive"
RANGE_ONLY = "coefficient-range check only"


class NotPIntegralError(ArithmeticError):
    def __init__(self, index: HermitianIndex, value: Fraction, p: int):
        super().__init__(f"coefficient {value} at {tuple(index)} is not {p}-integral")
        self.index = index
        self.value = value
        self.p = p


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"modulus {p!r} is not a prime")


@dataclass(frozen=True)
class ModPExpansion:
    """Residues in ``[0, p)`` of a p-integral expansion; zero residues are not stored."""

    p: int
    mmax: int
    nmax: int
    coeffs: dict[HermitianIndex, int] = field(default_factory=dict)

    def __getitem__(self, h) -> int:
        return self.coeffs.get(HermitianIndex(*h), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: ModPExpansion) -> ModPExpansion:
        if (self.p, self.mmax, self.nmax) != (other.p, other.mmax, other.nmax):
            raise ValueError("residue expansions differ in modulus or truncation")
        out: dict[HermitianIndex, int] = {}
        for h1, c1 in self.coeffs.items():
            for h2, c2 in other.coeffs.items():
                h = HermitianIndex(h1.m + h2.m, h1.n + h2.n, h1.a + h2.a, h1.b + h2.b)
                if h.m > self.mmax or h.n > self.nmax:
                    continue
                out[h] = (out.get(h, 0) + c1 * c2) % self.p
        return ModPExpansion(self.p, self.mmax, self.nmax, {h: c for h, c in out.items() if c})


def _residue(c: Fraction, p: int) -> int | None:
    if c.denominator % p == 0:
        return None
    return c.numerator * pow(c.denominator, -1, p) % p


def reduce_mod_p(f: QExpansion, p: int) -> ModPExpansion:
    """Coefficient-wise reduction; raises :class:`NotPIntegralError` naming the first bad index."""
    _check_prime(p)
    if p == 3 and f.theta_depth:
        raise ValueError("p = 3 is excluded for theta-operator images (det introduces a factor 1/3)")
    out = {}
    for h, c in f.items():
        r = _residue(c, p)
        if r is None:
            raise NotPIntegralError(h, c, p)
        if r:
            out[h] = r
    return ModPExpansion(p, f.mmax, f.nmax, out)


def sturm_bound(k: int, parity: str) -> int:
    """``floor(k/9)`` for even weight, ``floor(k/9) - 1`` for odd weight."""
    if parity == "even":
        if k % 2:
            raise ValueError(f"even-weight bound requested for odd weight {k}")
        return k // 9
    if parity == "odd":
        if k % 2 == 0:
            raise ValueError(f"odd-weight bound requested for even weight {k}")
        return k // 9 - 1
    raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")


@dataclass(frozen=True)
class CongruenceVerdict:
    status: str
    bound_used: int
    witness: HermitianIndex | None
    theorem_basis: str
    p: int
    weight: int | None

    def __post_init__(self):
        if self.status not in (PROVEN, REFUTED, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == REFUTED and self.witness is None:
            raise ValueError("a refuted verdict needs a witness")

    def to_json(self) -> dict:
        w = None if self.witness is None else dict(zip("mnab", self.witness))
        return {
            "status": self.status,
            "bound_used": self.bound_used,
            "witness": w,
            "theorem_basis": self.theorem_basis,
            "p": self.p,
            "weight": self.weight,
        }

    @classmethod
    def from_json(cls, data: dict) -> CongruenceVerdict:
        w = data.get("witness")
        return cls(
            status=data["status"],
            bound_used=int(data["bound_used"]),
            witness=None if w is None else HermitianIndex(w["m"], w["n"], w["a"], w["b"]),
            theorem_basis=data["theorem_basis"],
            p=int(data["p"]),
            weight=data.get("weight"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def summary(self) -> str:
        line = f"{self.status} mod {self.p} (weight {self.weight}, bound {self.bound_used})"
        if self.witness is not None:
            line += f"; witness {tuple(self.witness)}"
        return f"{line}; basis: {self.theorem_basis}"


def effective_weight(f: QExpansion, p: int) -> int | None:
    """Weight mod ``p`` after ``theta_depth`` applications of the theta operator."""
    if f.weight is None:
        return None
    return f.weight + f.theta_depth * (p + 1)


def _sturm_basis(k: int | None, p: int, forms: Iterable[QExpansion]) -> tuple[int | None, str]:
    """Applicable bound and its justification, or ``(None, reason)``."""
    if k is None:
        return None, "weight unknown"
    if k % 2 == 0:
        if p < 5:
            return None, f"even-weight bound needs p >= 5 (p = {p})"
        kinds = [symmetry_type(f) for f in forms]
        if any(s != "symmetric" for s in kinds):
            return None, "even-weight bound needs symmetric forms"
        b = sturm_bound(k, "even")
        return b, f"even-weight Sturm bound for symmetric forms, p >= 5: m, n <= floor({k}/9) = {b}"
    b = sturm_bound(k, "odd")
    return b, f"odd-weight Sturm bound: m, n <= floor({k}/9) - 1 = {b}"


def _scan(f: QExpansion, g: QExpansion | None, p: int, rect: tuple[int, int]) -> HermitianIndex | None:
    """First index of ``rect`` (canonical order) where residues differ."""
    for h in enumerate_indices(*rect):
        a = _residue(f[h], p)
        if a is None:
            raise NotPIntegralError(h, f[h], p)
        b = 0
        if g is not None:
            b = _residue(g[h], p)
            if b is None:
                raise NotPIntegralError(h, g[h], p)
        if a != b:
            return h
    return None


def _covers(f: QExpansion, rect: tuple[int, int]) -> None:
    if rect[0] > f.mmax or rect[1] > f.nmax:
        raise TruncationError(f"expansion known to ({f.mmax}, {f.nmax}) but rectangle {rect} was requested")


def congruent_mod_p(
    f: QExpansion,
    g: QExpansion,
    p: int,
    rect: tuple[int, int] | None = None,
) -> CongruenceVerdict:
    """Decide ``f = g (mod p)``.

    Without ``rect`` the Sturm rectangle of the common weight is used when it
    applies; otherwise only ``rect`` is scanned and a match is reported as
    inconclusive.  ``g`` may be the zero expansion without weight metadata.
    """
    _check_prime(p)
    if p == 3 and (f.theta_depth or g.theta_depth):
        raise ValueError("p = 3 is excluded for theta-operator images")
    kf = effective_weight(f, p)
    kg = effective_weight(g, p)
    if g.is_zero() and kg is None:
        kg = kf
    if f.is_zero() and kf is None:
        kf = kg
    if kf != kg:
        bound, basis = None, f"weights differ mod p ({kf} vs {kg})"
    else:
        bound, basis = _sturm_basis(kf, p, (f, g))
    if rect is None:
        if bound is None:
            return CongruenceVerdict(INCONCLUSIVE, -1, None, f"{RANGE_ONLY}: no rectangle given and {basis}", p, kf)
        rect = (bound, bound)
    rect = (int(rect[0]), int(rect[1]))
    if rect[0] < 0 or rect[1] < 0:
        raise ValueError("rectangle bounds must be non-negative")
    _covers(f, rect)
    _covers(g, rect)
    w = _scan(f, g, p, rect)
    if w is not None:
        return CongruenceVerdict(REFUTED, -1 if bound is None else bound, w, f"residues differ at {tuple(w)}", p, kf)
    if bound is not None and min(rect) >= bound:
        return CongruenceVerdict(PROVEN, bound, None, basis, p, kf)
    why = basis if bound is None else f"rectangle {rect} smaller than the bound {bound}"
    return CongruenceVerdict(INCONCLUSIVE, -1 if bound is None else bound, None, f"{RANGE_ONLY} on {rect}: {why}", p, kf)


def verify_theta_kernel(f: QExpansion, k: int, p: int) -> CongruenceVerdict:
    """Decide ``Theta(f) = 0 (mod p)`` via the Sturm bound at weight ``k + p + 1``."""
    _check_prime(p)
    w = k + p + 1
    if p < 5:
        return CongruenceVerdict(
            INCONCLUSIVE, -1, None, f"outside hypotheses: the theta-kernel criterion needs p >= 5 (p = {p})", p, w
        )
    parity = "even" if w % 2 == 0 else "odd"
    bound = sturm_bound(w, parity)
    rect = (max(bound, 0), max(bound, 0))
    _covers(f, rect)
    if parity == "even":
        basis = (
            f"Theta(F) is congruent to a cusp form of weight {w}; "
            f"even-weight Sturm bound for symmetric forms, p >= 5: m, n <= floor({w}/9) = {bound}"
        )
        ok = symmetry_type(f) == "symmetric"
    else:
        basis = (
            f"Theta(F) is congruent to a cusp form of weight {w}; "
            f"odd-weight Sturm bound: m, n <= floor({w}/9) - 1 = {bound}"
        )
        ok = True
    tf = theta_operator(f.truncate(*rect))
    witness = _scan(tf, None, p, rect)
    if witness is not None:
        r = _residue(tf[witness], p)
        return CongruenceVerdict(REFUTED, bound, witness, f"Theta(F) has residue {r} at {tuple(witness)}", p, w)
    if not ok:
        return CongruenceVerdict(
            INCONCLUSIVE, bound, None, f"{RANGE_ONLY} on {rect}: form not symmetric on its truncation", p, w
        )
    return CongruenceVerdict(PROVEN, bound, None, basis, p, w)


@dataclass(frozen=True)
class CheckRow:
    label: str
    expected: object
    actual: object
    passed: bool


@dataclass
class CheckReport:
    name: str
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(r.passed for r in self.rows)

    def failures(self) -> list[CheckRow]:
        return [r for r in self.rows if not r.passed]

    def summary(self) -> str:
        good = sum(r.passed for r in self.rows)
        lines = [f"{self.name}: {good}/{len(self.rows)} rows pass"]
        for r in self.failures():
            lines.append(f"  FAIL {r.label}: expected {r.expected}, got {r.actual}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "rows": [
                {"label": r.label, "expected": str(r.expected), "actual": str(r.actual), "passed": r.passed}
                for r in self.rows
            ],
        }


def _kernel_rows(name: str, fixture, p: int) -> CheckReport:
    rep = CheckReport(name)
    for row in fixture.rows:
        d = det3(row.index)
        prod = d * row.value
        rep.rows.append(CheckRow(f"{tuple(row.index)} det3={d} a={row.value}", 0, prod % p, prod % p == 0))
    return rep


def check_table_congruences() -> list[CheckReport]:
    """``det3 * a = 0`` mod 2 over the weight-9 table and mod 11 over the weight-45 table."""
    from .fixtures import load_fixture

    return [
        _kernel_rows("table2 det3*a = 0 (mod 2)", load_fixture("table2"), 2),
        _kernel_rows("table3 det3*a = 0 (mod 11)", load_fixture("table3"), 11),
    ]
