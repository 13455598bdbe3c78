"""Hermitian Eisenstein series of degree 2 over ``Q(sqrt(-3))`` and the cusp forms built from them.

For class number one the coefficients are given in closed form:

* ``H = 0``: 1.
* ``rank H = 1``: ``-(2k / B_k) * sigma_{k-1}(e(H))`` (the elliptic Eisenstein series).
* ``rank H = 2``: ``4k(k-1) / (B_k B_{k-1,chi}) * sum_{d | e(H)} d^{k-1} G(k-2, 3 det(H) / d^2)``

where ``e(H)`` is the content of ``H``, ``chi`` the character of conductor 3 and
``G(s, N) = (1 + |chi(N)|)^{-1} sum_{d | N} (chi(d) + chi(-N/d)) d^s``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .hindex import HermitianIndex, content, det3, enumerate_indices
from .qexp import QExpansion, linear_combination

__all__ = [
    "SUPPORTED_WEIGHTS",
    "UnsupportedWeightError",
    "NormalizationError",
    "IdentityError",
    "bernoulli",
    "generalized_bernoulli",
    "chi3",
    "eisenstein_coefficient",
    "eisenstein_qexp",
    "e4_via_theta",
    "f10_qexp",
    "f12_qexp",
    "f12_normalized",
    "F12_NORMALIZER",
    "MASS_WEIGHTS",
    "e12_via_mass_formula",
]

SUPPORTED_WEIGHTS = (4, 6, 10, 12)


class UnsupportedWeightError(ValueError):
    pass


class NormalizationError(ArithmeticError):
    pass


class IdentityError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with ``B_1 = -1/2``."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, j) * bernoulli(j) for j in range(n)) / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum(comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1))


def chi3(n: int) -> int:
    """The odd quadratic character of conductor 3."""
    return (0, 1, -1)[n % 3]


@lru_cache(maxsize=None)
def generalized_bernoulli(k: int) -> Fraction:
    """``B_{k, chi}`` for ``chi = chi3``."""
    f = 3
    return Fraction(f) ** (k - 1) * sum(chi3(a) * bernoulli_poly(k, Fraction(a, f)) for a in range(1, f + 1))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _sigma(s: int, n: int) -> int:
    return sum(d**s for d in _divisors(n))


def _g(s: int, n: int) -> Fraction:
    tot = sum((chi3(d) + chi3(-(n // d))) * d**s for d in _divisors(n))
    return Fraction(tot, 1 + abs(chi3(n)))


def _check_weight(k: int) -> None:
    if k not in SUPPORTED_WEIGHTS:
        raise UnsupportedWeightError(f"weight {k} not supported (use one of {SUPPORTED_WEIGHTS})")


def eisenstein_coefficient(k: int, h) -> Fraction:
    _check_weight(k)
    h = HermitianIndex(*h)
    d3 = det3(h)
    if d3 < 0:
        raise ValueError(f"{h} is not positive semidefinite")
    e = content(h)
    if e == 0:
        return Fraction(1)
    if d3 == 0:
        return -Fraction(2 * k) / bernoulli(k) * _sigma(k - 1, e)
    pre = Fraction(4 * k * (k - 1)) / (bernoulli(k) * generalized_bernoulli(k - 1))
    tot = Fraction(0)
    for d in _divisors(e):
        tot += d ** (k - 1) * _g(k - 2, d3 // (d * d))
    return pre * tot


def eisenstein_qexp(k: int, mmax: int, nmax: int) -> QExpansion:
    """``E_k`` truncated to ``m <= mmax, n <= nmax``; constant term 1."""
    _check_weight(k)
    coeffs = {h: eisenstein_coefficient(k, h) for h in enumerate_indices(mmax, nmax)}
    return QExpansion(mmax, nmax, coeffs, weight=k, char_exponent=(-(k // 2)) % 3, description=f"E{k}")


def e4_via_theta(mmax: int, nmax: int, lattice=None, threads: int | None = None) -> QExpansion:
    """``E_4`` as the theta series of the rank-4 Eisenstein lattice (weight 4 is one-dimensional)."""
    from .lattices import data as lattice_data
    from .lattices.theta import theta_expansion

    lat = lattice if lattice is not None else lattice_data.load_standard("s4")
    f = theta_expansion(lat, mmax, nmax, threads=threads)
    return f.with_meta(description="E4 (theta of rank-4 lattice)")


def f10_qexp(mmax: int, nmax: int) -> QExpansion:
    e4, e6, e10 = (eisenstein_qexp(k, mmax, nmax) for k in (4, 6, 10))
    return (e10 - e4 * e6).with_meta(description="f10")


def f12_qexp(mmax: int, nmax: int) -> QExpansion:
    e4, e6, e12 = (eisenstein_qexp(k, mmax, nmax) for k in (4, 6, 12))
    f = e12 - (e4**3).scale(Fraction(441, 691)) - (e6**2).scale(Fraction(250, 691))
    return f.with_meta(description="f12")


F12_NORMALIZER = Fraction(-691 * 1847, 2**13 * 3**6 * 5**3 * 7**2)


def f12_normalized(mmax: int, nmax: int) -> QExpansion:
    """The integral normalization of ``f12``; raises :class:`NormalizationError` on a non-integer coefficient."""
    f = f12_qexp(mmax, nmax).scale(F12_NORMALIZER).with_meta(description="f12 normalized")
    for h, c in f.items():
        if c.denominator != 1:
            raise NormalizationError(f"non-integral coefficient {c} at {h}")
    return f


_MASS_DEN = 691 * 809 * 1847

# theta(H_i) weights for E12; the H1 sign is + (the weights must sum to 1).
MASS_WEIGHTS: dict[str, Fraction] = {
    "h1": Fraction(3 * 7 * 11 * 13, _MASS_DEN),
    "h2": Fraction(2**6 * 5**3 * 7 * 11 * 13, _MASS_DEN),
    "h3": Fraction(2 * 3**8 * 5**2 * 7 * 11 * 13, _MASS_DEN),
    "h4": Fraction(2**15 * 3**2 * 5**2 * 7 * 13, _MASS_DEN),
    "h5": Fraction(2**8 * 3**9 * 5, _MASS_DEN),
}


def e12_via_mass_formula(
    mmax: int,
    nmax: int,
    thetas: dict[str, QExpansion] | None = None,
    check: bool = True,
    threads: int | None = None,
) -> QExpansion:
    """``sum_i w_i theta(H_i)``; with ``check`` it must agree with :func:`eisenstein_qexp` (k=12)."""
    if thetas is None:
        from .lattices import data as lattice_data
        from .lattices.theta import theta_expansion

        thetas = {
            name: theta_expansion(lattice_data.load_standard(name), mmax, nmax, threads=threads)
            for name in MASS_WEIGHTS
        }
    f = linear_combination((MASS_WEIGHTS[name], thetas[name].truncate(mmax, nmax)) for name in MASS_WEIGHTS)
    f = f.with_meta(weight=12, char_exponent=0, description="E12 (mass formula)")
    if check:
        e12 = eisenstein_qexp(12, mmax, nmax)
        for h in enumerate_indices(mmax, nmax):
            if f[h] != e12[h]:
                raise IdentityError(f"mass formula differs from E12 at {h}: {f[h]} != {e12[h]}")
    return f
