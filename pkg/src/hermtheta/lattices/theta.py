"""Degree-2 Hermitian theta series by pair counting.

``a(theta; (m, n, a, b))`` counts pairs ``(g1, g2)`` with ``<g1, g1> = 2m``,
``<g2, g2> = 2n`` and ``<g1, g2> = 2t``.  In the Z-realization the index
coordinates are integral bilinear forms: ``b = B(g1, g2)`` and
``a = 2 B(g1, w g2) - B(g1, g2)`` with ``B = Re <., .>``.

The six units act freely on nonzero vectors and rotate ``t``, so only one
vector per unit orbit is used on each side; the 36 unit pairs are restored
analytically.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from ..hindex import HermitianIndex, unit_multiply
from ..qexp import QExpansion
from .enumerate import VectorShells, lll_gram, short_vectors
from .lattice import EisensteinLattice

__all__ = ["theta_expansion", "pair_histogram", "index_forms", "brute_force_theta"]

_CHUNK_ELEMENTS = 1 << 23
_F32_EXACT = 1 << 24


def index_forms(lat: EisensteinLattice) -> tuple[np.ndarray, np.ndarray]:
    """Integer matrices ``(Ga, Gb)`` with ``a = x Ga y^T`` and ``b = x Gb y^T``."""
    g = lat.real_gram
    w = lat.omega
    gb = g
    ga = 2 * g @ w - g
    return ga, gb


@lru_cache(maxsize=16)
def _reduction(lat: EisensteinLattice) -> tuple[np.ndarray, np.ndarray]:
    t, _ = lll_gram(lat.real_gram)
    return t, _int_inverse(t)


def _int_inverse(t: np.ndarray) -> np.ndarray:
    n = len(t)
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(t)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    inv = np.array([[int(x) for x in row[n:]] for row in a], dtype=np.int64)
    if not np.array_equal(inv @ t, np.eye(n, dtype=np.int64)):
        raise ArithmeticError("basis change is not unimodular")
    return inv


def _count_chunk(left: np.ndarray, right_t: np.ndarray, offset: int, size: int) -> np.ndarray:
    keys = left @ right_t
    k = keys.astype(np.int64, copy=False).ravel()
    k += offset
    return np.bincount(k, minlength=size)


def pair_histogram(
    lat: EisensteinLattice,
    left: np.ndarray,
    right: np.ndarray,
    m: int,
    n: int,
    threads: int = 1,
) -> dict[tuple[int, int], int]:
    """Histogram of ``(a, b)`` over all pairs of rows ``(left[i], right[j])``.

    Rows are Z-realization coordinates of vectors of norms ``2m`` and ``2n``.
    """
    if len(left) == 0 or len(right) == 0:
        return {}
    bmax = isqrt(4 * m * n)
    amax = isqrt(12 * m * n)
    width = 2 * bmax + 1
    size = (2 * amax + 1) * width
    offset = amax * width + bmax
    ga, gb = index_forms(lat)
    t, tinv = _reduction(lat)
    # work in the reduced basis where coordinates and forms are small
    xl = left @ tinv
    xr = right @ tinv
    form = t @ (width * ga + gb) @ t.T
    lk = xl @ form
    bound = int(np.abs(lk).max()) * int(np.abs(xr).max()) * xr.shape[1]
    dtype = np.float32 if bound < _F32_EXACT else np.float64
    lk = lk.astype(dtype)
    rt = np.ascontiguousarray(xr.T.astype(dtype))
    step = max(1, _CHUNK_ELEMENTS // len(right))
    starts = range(0, len(left), step)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda s: _count_chunk(lk[s : s + step], rt, offset, size), starts))
    else:
        parts = [_count_chunk(lk[s : s + step], rt, offset, size) for s in starts]
    total = np.zeros(size, dtype=np.int64)
    for p in parts:  # fixed order: identical result for any thread count
        total[: len(p)] += p[:size]
        if len(p) > size:
            raise ArithmeticError("inner product outside the Cauchy-Schwarz range")
    out = {}
    for key in np.nonzero(total)[0]:
        a, b = divmod(int(key) - offset + amax * width + bmax, width)
        a -= amax
        b -= bmax
        out[(a, b)] = int(total[key])
    return out


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


def theta_expansion(
    lat: EisensteinLattice,
    mmax: int,
    nmax: int,
    threads: int | None = None,
    shells: VectorShells | None = None,
) -> QExpansion:
    """Theta series of ``lat`` truncated to ``m <= mmax``, ``n <= nmax``."""
    if mmax < 0 or nmax < 0:
        raise ValueError("truncation bounds must be non-negative")
    threads = threads or _default_threads()
    r = lat.rank
    meta = dict(weight=r, char_exponent=(-(r // 2)) % 3, description=f"theta({lat.name})")
    coeffs: dict[HermitianIndex, int] = {HermitianIndex(0, 0, 0, 0): 1}
    if r == 0:
        return QExpansion(mmax, nmax, coeffs, **meta)
    top = 2 * max(mmax, nmax)
    if shells is None or shells.max_norm < top:
        shells = short_vectors(lat, top)
    for k in range(1, max(mmax, nmax) + 1):
        c = shells.count(2 * k)
        if c:
            if k <= nmax:
                coeffs[HermitianIndex(0, k, 0, 0)] = c
            if k <= mmax:
                coeffs[HermitianIndex(k, 0, 0, 0)] = c
    reps = {}
    for k in range(1, max(mmax, nmax) + 1):
        reps[k] = shells.unit_representatives(2 * k, lat.omega)
    for m in range(1, mmax + 1):
        for n in range(1, nmax + 1):
            hist = pair_histogram(lat, reps[m], reps[n], m, n, threads=threads)
            full: dict[tuple[int, int], int] = {}
            for (a, b), cnt in hist.items():
                for u in range(6):
                    key = unit_multiply(a, b, u)
                    full[key] = full.get(key, 0) + 6 * cnt
            for (a, b), cnt in full.items():
                coeffs[HermitianIndex(m, n, a, b)] = cnt
    return QExpansion(mmax, nmax, coeffs, **meta)


def brute_force_theta(lat: EisensteinLattice, mmax: int, nmax: int) -> QExpansion:
    """Direct count over all ordered pairs of full shells (small lattices only)."""
    r = lat.rank
    meta = dict(weight=r, char_exponent=(-(r // 2)) % 3, description=f"theta({lat.name})")
    if r == 0:
        return QExpansion(mmax, nmax, {HermitianIndex(0, 0, 0, 0): 1}, **meta)
    top = 2 * max(mmax, nmax)
    sh = short_vectors(lat, top)
    zero = np.zeros((1, 2 * r), dtype=np.int64)
    vec = {0: zero}
    for k in range(1, max(mmax, nmax) + 1):
        vec[k] = sh.full(2 * k)
    ga, gb = index_forms(lat)
    coeffs: dict[HermitianIndex, int] = {}
    for m in range(mmax + 1):
        for n in range(nmax + 1):
            if len(vec[m]) == 0 or len(vec[n]) == 0:
                continue
            a = vec[m] @ ga @ vec[n].T
            b = vec[m] @ gb @ vec[n].T
            keys, counts = np.unique(np.stack([a.ravel(), b.ravel()], axis=1), axis=0, return_counts=True)
            for (aa, bb), c in zip(keys, counts):
                coeffs[HermitianIndex(m, n, int(aa), int(bb))] = int(c)
    return QExpansion(mmax, nmax, coeffs, **meta)
