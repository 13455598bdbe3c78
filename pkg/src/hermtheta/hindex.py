"""Fourier indices of degree-2 Hermitian forms over the Eisenstein field.

An index ``(m, n, a, b)`` stands for the Hermitian matrix ``[[m, t], [conj(t), n]]``
with ``t = (a + b*sqrt(-3)) / (2*sqrt(-3))``.  ``t`` lies in the inverse
different exactly when ``a`` and ``b`` have the same parity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, NamedTuple

__all__ = [
    "HermitianIndex",
    "InvalidIndexError",
    "det3",
    "enumerate_indices",
    "cell_indices",
    "det",
    "conj_transpose_index",
    "unit_multiply",
    "unit_orbit",
    "orbit_members",
    "content",
    "sort_key",
    "check_index",
]


class InvalidIndexError(ValueError):
    pass


class HermitianIndex(NamedTuple):
    m: int
    n: int
    a: int
    b: int

    def __str__(self) -> str:
        return f"({self.m},{self.n},{self.a},{self.b})"


def check_index(h) -> HermitianIndex:
    h = HermitianIndex(*h)
    if (h.a - h.b) % 2:
        raise InvalidIndexError(f"{h}: a and b must have the same parity")
    return h


def det3(h) -> int:
    """Return ``3 * det(H)``, which is always an integer."""
    m, n, a, b = check_index(h)
    return 3 * m * n - (a * a + 3 * b * b) // 4


def sort_key(h) -> tuple[int, int, int, int]:
    """Canonical ordering ``(m, n, b, a)``."""
    return (h[0], h[1], h[3], h[2])


def _cell(m: int, n: int) -> Iterator[HermitianIndex]:
    bound = 12 * m * n
    bmax = isqrt(bound // 3)
    for b in range(-bmax, bmax + 1):
        rest = bound - 3 * b * b
        amax = isqrt(rest)
        start = -amax
        if (start - b) % 2:
            start += 1
        for a in range(start, amax + 1, 2):
            yield HermitianIndex(m, n, a, b)


def enumerate_indices(mmax: int, nmax: int) -> list[HermitianIndex]:
    """All positive semidefinite indices with ``m <= mmax`` and ``n <= nmax``."""
    if mmax < 0 or nmax < 0:
        raise ValueError("truncation bounds must be non-negative")
    out: list[HermitianIndex] = []
    for m in range(mmax + 1):
        for n in range(nmax + 1):
            out.extend(_cell(m, n))
    return out


def cell_indices(m: int, n: int) -> list[HermitianIndex]:
    return list(_cell(m, n))


def conj_transpose_index(h) -> HermitianIndex:
    """Index action of ``Z -> Z^T`` (conjugates ``t``)."""
    m, n, a, b = h
    return HermitianIndex(m, n, -a, b)


def unit_multiply(a: int, b: int, k: int) -> tuple[int, int]:
    """Multiply ``a + b*sqrt(-3)`` by ``w**k`` (``w`` a primitive sixth root of unity)."""
    for _ in range(k % 6):
        a, b = (a - 3 * b) // 2, (a + b) // 2
    return a, b


def orbit_members(h) -> set[HermitianIndex]:
    """Orbit of ``h`` under diagonal unit conjugation and transposition."""
    m, n, a, b = check_index(h)
    out = set()
    for k in range(6):
        aa, bb = unit_multiply(a, b, k)
        out.add(HermitianIndex(m, n, aa, bb))
        out.add(HermitianIndex(m, n, -aa, bb))
    return out


def unit_orbit(h) -> HermitianIndex:
    """Canonical (smallest in ``(m, n, b, a)`` order) member of the orbit of ``h``."""
    return min(orbit_members(h), key=sort_key)


def content(h) -> int:
    """Largest ``l`` with ``H / l`` again an index (0 for the zero matrix)."""
    m, n, a, b = check_index(h)
    g = gcd(gcd(m, n), gcd(a, b))
    if g == 0:
        return 0
    best = 1
    for d in range(1, isqrt(g) + 1):
        if g % d:
            continue
        for l in (d, g // d):
            if l > best and ((a // l) - (b // l)) % 2 == 0:
                best = l
    return best


def det(h) -> Fraction:
    return Fraction(det3(h), 3)
