"""Building Eisenstein lattices from codes.

Vectors live in ``K^n`` with an ambient Hermitian form.  A generating set is
cleared of denominators, brought to Hermite normal form over the Euclidean
ring ``O_K`` to extract a basis, and the Gram matrix of that basis is
validated before it is returned.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from ..arith import THETA, UNITS, EisensteinInt, KElement, lift_residue
from .codes import TernaryCode, golay12, tetracode, triples_glued_by_tetracode, direct_sum
from .lattice import EisensteinLattice, LatticeValidationError

__all__ = [
    "ConstructionError",
    "hnf_basis",
    "lattice_from_generators",
    "construction_a",
    "d4_gram",
    "hexacode_d4_lattice",
    "standard_lattices",
]

KVec = Sequence[KElement]


class ConstructionError(ValueError):
    pass


def hnf_basis(rows: Sequence[Sequence[EisensteinInt]]) -> list[list[EisensteinInt]]:
    """Row echelon basis of the ``O_K``-module spanned by ``rows``."""
    a = [list(r) for r in rows if any(not z.is_zero() for z in r)]
    if not a:
        return []
    ncols = len(a[0])
    basis: list[list[EisensteinInt]] = []
    for c in range(ncols):
        while True:
            live = [i for i, r in enumerate(a) if not r[c].is_zero()]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda i: a[i][c].norm())
            p = a[piv]
            for i in live:
                if i == piv:
                    continue
                q, _ = a[i][c].divmod(p[c])
                a[i] = [x - q * y for x, y in zip(a[i], p)]
        live = [i for i, r in enumerate(a) if not r[c].is_zero()]
        if live:
            basis.append(a.pop(live[0]))
        a = [r for r in a if any(not z.is_zero() for z in r)]
    if a:
        raise ConstructionError("generators are not contained in the echelon span")
    return basis


def _integralize(vectors: Sequence[KVec]) -> tuple[list[list[EisensteinInt]], int]:
    den = 1
    for v in vectors:
        for z in v:
            den = lcm(den, z.x.denominator, z.y.denominator)
    out = []
    for v in vectors:
        out.append([EisensteinInt(int(z.x * den), int(z.y * den)) for z in v])
    return out, den


def lattice_from_generators(
    vectors: Sequence[KVec],
    form: Sequence[Sequence[KElement]],
    name: str = "",
    validate: bool = True,
) -> EisensteinLattice:
    """Lattice spanned over ``O_K`` by ``vectors`` with ``<x, y> = conj(x)^T form y``."""
    ints, den = _integralize(vectors)
    basis = [[KElement(Fraction(z.x, den), Fraction(z.y, den)) for z in row] for row in hnf_basis(ints)]
    basis = _pair_reduce(basis, form)
    rank = len(basis)
    gram = [tuple(_hform(form, basis[j], basis[k]) for k in range(rank)) for j in range(rank)]
    lat = EisensteinLattice(tuple(gram), name=name)
    if validate:
        try:
            lat.validate()
        except LatticeValidationError as exc:
            raise ConstructionError(f"{name or 'lattice'}: {exc}") from exc
    return lat


def _hform(form, x: KVec, y: KVec) -> KElement:
    n = len(form)
    tot = KElement(0)
    for p in range(n):
        if x[p].is_zero():
            continue
        sy = sum((form[p][q] * y[q] for q in range(n) if not y[q].is_zero()), KElement(0))
        tot = tot + x[p].conj() * sy
    return tot


def _nearest_integer(z: KElement) -> EisensteinInt:
    best = None
    bx, by = round(z.x), round(z.y)
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            q = EisensteinInt(bx + dx, by + dy)
            d = (z - q.to_k()).norm()
            if best is None or d < best[0]:
                best = (d, q)
    return best[1]


def _pair_reduce(basis: list[list[KElement]], form) -> list[list[KElement]]:
    """Greedy size reduction ``b_i -= q b_j`` over ``O_K`` until no norm drops."""
    basis = [list(b) for b in basis]
    norms = [_hform(form, b, b).real() for b in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                mu = _hform(form, basis[j], basis[i]) / norms[j]
                q = _nearest_integer(mu)
                if q.is_zero():
                    continue
                cand = [x - q.to_k() * y for x, y in zip(basis[i], basis[j])]
                nn = _hform(form, cand, cand).real()
                if nn < norms[i]:
                    basis[i], norms[i] = cand, nn
                    changed = True
    order = sorted(range(len(basis)), key=lambda i: norms[i])
    return [basis[i] for i in order]


def _scaled_identity(n: int, c: Fraction) -> list[list[KElement]]:
    return [[KElement(c if i == j else 0) for j in range(n)] for i in range(n)]


def construction_a(code: TernaryCode, glue: bool = False, name: str = "") -> EisensteinLattice:
    """Lift ``code`` to ``{v in O_K^n : v mod theta in code}`` with form ``(2/3) conj(x)^T y``.

    With ``glue=True`` the code must contain the all-ones word; the lattice is
    then cut down to ``sum(v) = 0 (mod 3)`` and extended by the glue vector
    ``(1/theta) * (1, ..., 1) - theta * e_1``.  For the ternary Golay code this
    removes all 72 roots and yields the Hermitian Leech lattice.
    """
    n = code.length
    if n == 0:
        return EisensteinLattice((), name=name)
    if not code.is_self_orthogonal():
        raise ConstructionError("construction A needs a self-orthogonal code")
    theta = THETA.to_k()
    zero = KElement(0)
    gens: list[list[KElement]] = []
    for g in code.generators:
        gens.append([lift_residue(x).to_k() for x in g])
    for j in range(n):
        gens.append([theta if i == j else zero for i in range(n)])
    if glue:
        if not code.contains([1] * n):
            raise ConstructionError("sum-congruence glue needs the all-ones codeword")
        gens = _sum_kernel(gens)
        inv_theta = KElement(1) / theta
        g = [inv_theta] * n
        g[0] = g[0] - theta
        gens.append(g)
    form = _scaled_identity(n, Fraction(2, 3))
    return lattice_from_generators(gens, form, name=name)


def _sum_kernel(gens: list[list[KElement]]) -> list[list[KElement]]:
    """Generators of ``{v in span : sum(v) = 0 (mod 3)}`` assuming ``theta | sum(v)`` on the span."""
    ints, den = _integralize(gens)
    if den != 1:
        raise ConstructionError("expected integral generators")
    basis = hnf_basis(ints)

    def phi(v: list[EisensteinInt]) -> int:
        s = EisensteinInt(0, 0)
        for z in v:
            s = s + z
        q = s.exact_div(THETA)
        return (q.x + 2 * q.y) % 3

    out: list[list[EisensteinInt]] = []
    pivot = None
    for v in basis:
        r = phi(v)
        if r == 0:
            out.append(v)
        elif pivot is None:
            pivot = (v, r)
            out.append([THETA * z for z in v])
        else:
            pv, pr = pivot
            # r = pr or r = -pr since F_3^* = {1, 2}
            sgn = 1 if r == pr else -1
            out.append([x - sgn * y for x, y in zip(v, pv)])
    if pivot is None:
        raise ConstructionError("sum map is zero on the lattice; glue does not apply")
    return [[z.to_k() for z in v] for v in out]


def d4_gram() -> list[list[KElement]]:
    """Hermitian form on ``O_K^2`` realizing ``D4``: ``[[2, 2/theta], [conj, 2]]``."""
    s = KElement(2) / THETA.to_k()
    return [[KElement(2), s], [s.conj(), KElement(2)]]


_F4_HEXACODE = (
    (1, 0, 0, 1, "wb", "w"),
    (0, 1, 0, 1, "w", "wb"),
    (0, 0, 1, 1, 1, 1),
)


def hexacode_d4_lattice(name: str = "") -> EisensteinLattice:
    """Six copies of ``D4`` glued by the hexacode over ``F_4 = O_K / 2``.

    ``D4^# / D4`` is a one-dimensional ``F_4``-space; a glue class ``y`` and its
    ``w``-multiples give the identification used for the code words.
    """
    block = d4_gram()
    form = [[KElement(0)] * 12 for _ in range(12)]
    for i in range(6):
        for p in range(2):
            for q in range(2):
                form[2 * i + p][2 * i + q] = block[p][q]
    y = _d4_glue_class()
    w = KElement(0, 1)
    values = {0: None, 1: KElement(1), "w": w, "wb": w * w}
    gens: list[list[KElement]] = []
    zero = KElement(0)
    for i in range(12):
        gens.append([KElement(1) if j == i else zero for j in range(12)])
    for word in _F4_HEXACODE:
        vec = [zero] * 12
        for i, sym in enumerate(word):
            c = values[sym]
            if c is None:
                continue
            vec[2 * i] = c * y[0]
            vec[2 * i + 1] = c * y[1]
        gens.append(vec)
        gens.append([w * z for z in vec])
    return lattice_from_generators(gens, form, name=name)


def _d4_glue_class() -> tuple[KElement, KElement]:
    """A vector of ``D4^#`` not in ``D4`` (dual taken w.r.t. ``Re <x, y>``)."""
    # D4^# = {y : <e_j, y> in (2/theta) O_K}; solve form * y = (2/theta) * e_1
    s = d4_gram()
    t = KElement(2) / THETA.to_k()
    det = s[0][0] * s[1][1] - s[0][1] * s[1][0]
    y0 = (s[1][1] * t) / det
    y1 = (-s[1][0] * t) / det
    return (y0, y1)


def standard_lattices() -> dict[str, EisensteinLattice]:
    """The rank-4 lattice and the five rank-12 classes, by root system."""
    s4 = construction_a(tetracode(), name="s4")
    return {
        "s4": s4,
        "h1": construction_a(direct_sum(tetracode(), tetracode(), tetracode()), name="h1"),
        "h2": construction_a(triples_glued_by_tetracode(), name="h2"),
        "h3": hexacode_d4_lattice(name="h3"),
        "h4": construction_a(golay12(), name="h4"),
        "h5": construction_a(golay12(), glue=True, name="h5"),
    }


def unit_orbit_vectors(v: Sequence[EisensteinInt]) -> list[list[EisensteinInt]]:
    return [[u * z for z in v] for u in UNITS]
