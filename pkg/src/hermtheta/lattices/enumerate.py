"""Short vectors of positive definite integral quadratic forms.

Enumeration runs on an LLL-reduced basis with a breadth-first Fincke-Pohst
search vectorized over numpy rows.  Floating point is used only to prune the
search tree, with a slack far above rounding error; every reported vector is
accepted by an exact integer norm computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import EisensteinLattice

__all__ = ["lll_gram", "fincke_pohst", "VectorShells", "short_vectors", "root_count"]

_SLACK = 1e-6


def lll_gram(gram: np.ndarray, delta: float = 0.99) -> tuple[np.ndarray, np.ndarray]:
    """LLL-reduce the basis behind an integral Gram matrix.

    Returns ``(T, G')`` with ``T`` unimodular and ``G' = T G T^T`` computed exactly.
    """
    g = [[int(x) for x in row] for row in np.asarray(gram)]
    n = len(g)
    t = [[int(i == j) for j in range(n)] for i in range(n)]

    def gram_of(t):
        return [[sum(t[i][p] * sum(g[p][q] * t[j][q] for q in range(n)) for p in range(n)) for j in range(n)] for i in range(n)]

    if n == 0:
        return np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    cur = gram_of(t)

    def gso(cur):
        mu = [[0.0] * n for _ in range(n)]
        bstar = [0.0] * n
        for i in range(n):
            for j in range(i):
                s = float(cur[i][j]) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
                mu[i][j] = s / bstar[j]
            bstar[i] = float(cur[i][i]) - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    def row_sub(i, j, q):
        # b_i <- b_i - q b_j
        t[i] = [a - q * b for a, b in zip(t[i], t[j])]
        for k in range(n):
            cur[i][k] -= q * cur[j][k]
        for k in range(n):
            cur[k][i] = cur[i][k]
        cur[i][i] = sum(t[i][p] * sum(g[p][q2] * t[i][q2] for q2 in range(n)) for p in range(n))

    k = 1
    mu, bstar = gso(cur)
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                row_sub(k, j, q)
                mu, bstar = gso(cur)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            t[k], t[k - 1] = t[k - 1], t[k]
            cur[k], cur[k - 1] = cur[k - 1], cur[k]
            for row in cur:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, bstar = gso(cur)
            k = max(k - 1, 1)
    tm = np.array(t, dtype=np.int64)
    gm = tm @ np.asarray(gram, dtype=np.int64) @ tm.T
    return tm, gm


def _decompose(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2`` (upper-triangular elimination from the last index)."""
    a = np.array(gram, dtype=float)
    n = len(a)
    d = np.zeros(n)
    u = np.zeros((n, n))
    for i in range(n):
        d[i] = a[i, i]
        for j in range(i + 1, n):
            u[i, j] = a[i, j] / a[i, i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j, k] -= u[i, j] * a[i, k]
    return d, u


def fincke_pohst(gram: np.ndarray, bound: int) -> np.ndarray:
    """All integer ``x`` with ``0 < x^T G x <= bound``, one per ``+-`` pair.

    The kept representative has its last nonzero coordinate positive.
    """
    g = np.asarray(gram, dtype=np.int64)
    n = len(g)
    if n == 0 or bound <= 0:
        return np.zeros((0, n), dtype=np.int64)
    # eliminate from the first coordinate so that the search fixes x_{n-1} first
    d, u = _decompose(g)
    limit = bound + _SLACK * (1 + bound)
    xs = np.zeros((1, 0), dtype=np.int64)  # columns are x_{i..n-1}
    partial = np.zeros(1)
    for i in range(n - 1, -1, -1):
        if xs.shape[1]:
            center = -(xs.astype(float) @ u[i, i + 1 :])
        else:
            center = np.zeros(len(xs))
        rem = np.maximum(limit - partial, 0.0)
        rad = np.sqrt(rem / d[i])
        lo = np.ceil(center - rad - 1e-9).astype(np.int64)
        hi = np.floor(center + rad + 1e-9).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        rep = np.repeat(np.arange(len(xs)), cnt)
        offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        xi = lo[rep] + offs
        newpartial = partial[rep] + d[i] * (xi - center[rep]) ** 2
        keep = newpartial <= limit
        xs = np.hstack([xi[keep, None], xs[rep[keep]]])
        partial = newpartial[keep]
    norms = np.einsum("ij,jk,ik->i", xs, g, xs)
    xs = xs[(norms > 0) & (norms <= bound)]
    # last nonzero coordinate positive
    idx = n - 1 - np.argmax(xs[:, ::-1] != 0, axis=1)
    sign = xs[np.arange(len(xs)), idx]
    return xs[sign > 0]


@dataclass
class VectorShells:
    """Vectors by norm in Z-realization coordinates ``(c | d)`` of ``sum (c_j + d_j w) b_j``.

    Only one of ``v, -v`` is stored (``half=True``); :meth:`full` restores the
    negatives and :meth:`unit_representatives` picks one vector per unit orbit.
    """

    rank: int
    max_norm: int
    by_norm: dict[int, np.ndarray] = field(default_factory=dict)
    half: bool = True

    def count(self, norm: int) -> int:
        if norm == 0:
            return 1
        v = self.by_norm.get(norm)
        if v is None:
            return 0
        return (2 if self.half else 1) * len(v)

    def full(self, norm: int) -> np.ndarray:
        v = self.by_norm.get(norm, np.zeros((0, 2 * self.rank), dtype=np.int64))
        return np.vstack([v, -v]) if self.half else v

    def unit_representatives(self, norm: int, omega: np.ndarray) -> np.ndarray:
        """One vector from each orbit of the six units (free on nonzero vectors)."""
        vecs = self.full(norm)
        seen: set[bytes] = set()
        reps = []
        w = omega
        for v in vecs:
            key = v.tobytes()
            if key in seen:
                continue
            reps.append(v)
            x = v
            for _ in range(6):
                seen.add(x.tobytes())
                x = w @ x
        if not reps:
            return np.zeros((0, 2 * self.rank), dtype=np.int64)
        return np.array(reps, dtype=np.int64)


def short_vectors(lat: EisensteinLattice, max_norm: int) -> VectorShells:
    """Complete shells of ``<v, v> <= max_norm`` (norms are even)."""
    if max_norm < 0:
        raise ValueError("max_norm must be non-negative")
    shells = VectorShells(lat.rank, max_norm)
    if lat.rank == 0 or max_norm < 2:
        return shells
    g = lat.real_gram
    t, gr = lll_gram(g)
    xs = fincke_pohst(gr, max_norm)
    vecs = xs @ t  # back to the (b, w b) coordinates
    norms = lat.norm(vecs) if len(vecs) else np.zeros(0, dtype=np.int64)
    # re-normalize the sign convention in original coordinates
    if len(vecs):
        n = vecs.shape[1]
        idx = n - 1 - np.argmax(vecs[:, ::-1] != 0, axis=1)
        sign = np.sign(vecs[np.arange(len(vecs)), idx])
        vecs = vecs * sign[:, None]
    for nv in sorted(set(int(x) for x in norms)):
        sel = vecs[norms == nv]
        order = np.lexsort(sel.T[::-1])
        shells.by_norm[nv] = sel[order]
    return shells


def root_count(lat: EisensteinLattice) -> int:
    return short_vectors(lat, 2).count(2)
