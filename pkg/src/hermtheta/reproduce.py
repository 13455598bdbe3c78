"""The acceptance suite as a library: one function per criterion.

Theta series of the five rank-12 lattices dominate the cost, so they are
computed once per :class:`Context` and shared between criteria.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .congruence import PROVEN, REFUTED, check_table_congruences, congruent_mod_p, reduce_mod_p, verify_theta_kernel
from .eisenstein import MASS_WEIGHTS, e12_via_mass_formula, e4_via_theta, eisenstein_qexp, f12_normalized
from .fixtures import FIXTURE_NAMES, load_fixture, verify_table1_against_enumeration
from .hindex import det3, enumerate_indices, orbit_members
from .qexp import QExpansion, theta_operator
from .lattices.data import RANK12_NAMES, load_standard
from .lattices.enumerate import root_count, short_vectors
from .lattices.theta import theta_expansion

__all__ = ["Context", "CriterionResult", "CRITERIA", "run_criterion", "run_all", "random_expansion"]

TIME_LIMIT_S = 15 * 60
EXPECTED_ROOTS = {"h1": 720, "h2": 288, "h3": 144, "h4": 72, "h5": 0}


@dataclass
class Context:
    threads: int | None = None
    _thetas: dict[str, QExpansion] = field(default_factory=dict)
    _elapsed: dict[str, float] = field(default_factory=dict)

    def theta(self, name: str) -> QExpansion:
        if name not in self._thetas:
            t0 = time.perf_counter()
            self._thetas[name] = theta_expansion(load_standard(name), 2, 2, threads=self.threads)
            self._elapsed[name] = time.perf_counter() - t0
        return self._thetas[name]

    def elapsed(self, name: str) -> float:
        self.theta(name)
        return self._elapsed[name]


@dataclass(frozen=True)
class CriterionResult:
    key: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key}: {self.detail} ({self.seconds:.1f}s)"


class _Checks:
    """Collects named boolean checks and renders a compact detail string."""

    def __init__(self):
        self.failed: list[str] = []
        self.count = 0

    def __call__(self, label: str, ok: bool) -> None:
        self.count += 1
        if not ok:
            self.failed.append(label)

    def detail(self) -> str:
        if self.failed:
            return f"{len(self.failed)}/{self.count} checks failed: " + "; ".join(self.failed)
        return f"{self.count} checks"


def leech_theta_table(ctx: Context) -> _Checks:
    c = _Checks()
    rep = verify_table1_against_enumeration(ctx.theta("h5"))
    for row in rep.rows:
        c(f"{row.label}: expected {row.expected}, got {row.actual}", row.passed)
    c(f"wall clock {ctx.elapsed('h5'):.0f}s <= {TIME_LIMIT_S}s", ctx.elapsed("h5") <= TIME_LIMIT_S)
    return c


def eisenstein_oracles(ctx: Context) -> _Checks:
    c = _Checks()
    e4 = eisenstein_qexp(4, 2, 2)
    c("E4 formula == rank-4 theta on (2,2)", e4 == e4_via_theta(2, 2, threads=ctx.threads))
    c("a(E4;(1,1,0,0)) == 17280", e4[(1, 1, 0, 0)] == 17280)
    te4 = theta_operator(e4)
    at_det = [te4[h] for h in enumerate_indices(2, 2) if det3(h) == 2]
    c("a(Theta E4; H) == 4320 whenever det H = 2/3", bool(at_det) and all(v == 4320 for v in at_det))
    return c


def theta_e4_mod7(ctx: Context) -> _Checks:
    c = _Checks()
    f = f12_normalized(2, 2)  # raises on a non-integral coefficient
    c("f12 normalized is integral on (2,2)", all(v.denominator == 1 for _, v in f.items()))
    c("a(f12n;(1,1,2,0)) == 1", f[(1, 1, 2, 0)] == 1)
    c("a(f12n;(1,1,0,0)) == 18", f[(1, 1, 0, 0)] == 18)
    v = congruent_mod_p(theta_operator(eisenstein_qexp(4, 2, 2)), f, 7, (1, 1))
    c(f"Theta(E4) = f12n mod 7 proven on (1,1) [{v.status}]", v.status == PROVEN and v.bound_used == 1)
    k = verify_theta_kernel(eisenstein_qexp(4, 1, 1), 4, 7)
    c(
        "E4 not in the mod 7 kernel (witness residue 1 in the orbit of (1,1,2,0))",
        k.status == REFUTED
        and k.witness in orbit_members((1, 1, 2, 0))
        and reduce_mod_p(theta_operator(eisenstein_qexp(4, 1, 1)), 7)[k.witness] == 1,
    )
    return c


def mass_formula(ctx: Context) -> _Checks:
    c = _Checks()
    c("weights sum to 1", sum(MASS_WEIGHTS.values()) == 1)
    try:
        e12_via_mass_formula(2, 2, thetas={n: ctx.theta(n) for n in RANK12_NAMES}, check=True)
        c("five-theta combination == E12 on (2,2)", True)
    except ArithmeticError as exc:
        c(f"five-theta combination == E12 on (2,2): {exc}", False)
    return c


def mod11_kernel(ctx: Context) -> _Checks:
    c = _Checks()
    e12 = eisenstein_qexp(12, 2, 2)
    for label, f in (("E12", e12), ("theta(H4)", ctx.theta("h4")), ("theta(H5)", ctx.theta("h5"))):
        v = verify_theta_kernel(f, 12, 11)
        c(f"{label} in the mod 11 kernel [{v.status}, bound {v.bound_used}]", v.status == PROVEN and v.bound_used == 2)
    comb = ctx.theta("h4").scale(7) + ctx.theta("h5").scale(5)
    v = congruent_mod_p(comb, e12, 11, (2, 2))
    c(f"7 theta(H4) + 5 theta(H5) = E12 mod 11 on (2,2) [{v.status}]", v.status == PROVEN)
    return c


def odd_weight_tables(ctx: Context) -> _Checks:
    c = _Checks()
    for name in FIXTURE_NAMES:
        load_fixture(name)  # det3 and factorization integrity
    for rep in check_table_congruences():
        for row in rep.rows:
            c(f"{rep.name} {row.label}", row.passed)
    t2 = load_fixture("table2")
    c("table2: expected 20 rows", len(t2.rows) == 20)
    c("table3: expected 11 rows", len(load_fixture("table3").rows) == 11)
    for r in t2.rows:
        if (3 * r.index.n - 1) % 2:
            c(f"table2 {r.label} value even", r.value % 2 == 0)
    return c


def classification(ctx: Context) -> _Checks:
    c = _Checks()
    for name in RANK12_NAMES:
        lat = load_standard(name)
        try:
            lat.validate()
            c(f"{name} axioms", True)
        except ValueError as exc:
            c(f"{name} axioms: {exc}", False)
        got = root_count(lat)
        c(f"{name} roots {got} == {EXPECTED_ROOTS[name]}", got == EXPECTED_ROOTS[name])
    sh = short_vectors(load_standard("h5"), 4)
    c("Leech minimum 4", sh.count(2) == 0 and sh.count(4) > 0)
    c(f"Leech kissing number {sh.count(4)} == 196560", sh.count(4) == 196560)
    return c


def random_expansion(
    rng: random.Random, mmax: int, nmax: int, terms: int = 6, dens: tuple[int, ...] = (1, 2, 3, 4, 5)
) -> QExpansion:
    """Sparse expansion with small numerators and denominators drawn from ``dens``."""
    idx = enumerate_indices(mmax, nmax)
    coeffs = {}
    for h in rng.sample(idx, min(terms, len(idx))):
        coeffs[h] = Fraction(rng.randint(-9, 9), rng.choice(dens))
    return QExpansion(mmax, nmax, coeffs)


def _orbit_and_swap_invariant(f: QExpansion) -> bool:
    for h, v in f.items():
        if any(f[g] != v for g in orbit_members(h)):
            return False
        if f[(h.n, h.m, -h.a, h.b)] != v:
            return False
    return True


def property_suites(ctx: Context) -> _Checks:
    c = _Checks()
    rng = random.Random(20240501)
    ok = True
    for _ in range(20):
        f, g, h = (random_expansion(rng, 2, 2) for _ in range(3))
        ok &= (f * g) * h == f * (g * h) and f * (g + h) == f * g + f * h and f * g == g * f
        ok &= f + QExpansion.zero(2, 2) == f and f * QExpansion.one(2, 2) == f
    c("q-expansion ring laws", ok)
    ok = True
    for _ in range(20):
        f = random_expansion(rng, 2, 2, dens=(1,))
        g = random_expansion(rng, 2, 2, dens=(1, 2, 3, 7))
        for p in (5, 11, 13):
            ok &= reduce_mod_p(f * g, p) == reduce_mod_p(f, p) * reduce_mod_p(g, p)
    c("reduction mod p is multiplicative", ok)
    for name in ("s4",) + RANK12_NAMES:
        f = ctx.theta(name) if name != "s4" else theta_expansion(load_standard("s4"), 2, 2, threads=ctx.threads)
        c(f"theta({name}) unit-orbit and pair-swap invariant", _orbit_and_swap_invariant(f))
    s4 = theta_expansion(load_standard("s4"), 2, 2, threads=ctx.threads)
    c("theta(S4)^3 == theta(H1)", (s4**3).coeffs == ctx.theta("h1").coeffs)
    for name, (m, n) in (("s4", (2, 2)), ("h4", (1, 2))):
        lat = load_standard(name)
        a = theta_expansion(lat, m, n, threads=1).dumps()
        b = theta_expansion(lat, m, n, threads=4).dumps()
        c(f"theta({name}) byte-identical for 1 and 4 threads", a == b)
    return c


CRITERIA: list[tuple[str, Callable[[Context], _Checks]]] = [
    ("leech-theta-table", leech_theta_table),
    ("eisenstein-oracles", eisenstein_oracles),
    ("theta-e4-mod7", theta_e4_mod7),
    ("mass-formula-e12", mass_formula),
    ("mod11-theta-kernel", mod11_kernel),
    ("odd-weight-table-congruences", odd_weight_tables),
    ("rank12-classification", classification),
    ("property-suites", property_suites),
]


def run_criterion(key: str, ctx: Context) -> CriterionResult:
    fn = dict(CRITERIA)[key]
    t0 = time.perf_counter()
    try:
        checks = fn(ctx)
        passed, detail = not checks.failed, checks.detail()
    except Exception as exc:  # a crash is a failed criterion, reported with its cause
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(key, passed, detail, time.perf_counter() - t0)


def run_all(ctx: Context | None = None, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    ctx = ctx or Context()
    out = []
    for key, _ in CRITERIA:
        res = run_criterion(key, ctx)
        if echo:
            echo(res.line())
        out.append(res)
    return out
