"""Exact arithmetic in the Eisenstein integers and the field they generate.

Elements are written in the basis ``(1, w)`` with ``w = (1 + sqrt(-3)) / 2``,
so ``w**2 = w - 1``.  Integral elements use plain Python ints (unbounded),
field elements use :class:`fractions.Fraction` coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "EisensteinInt",
    "KElement",
    "NotDivisibleError",
    "THETA",
    "UNITS",
    "theta_divide",
    "residue_mod_theta",
    "lift_residue",
]


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division in the Eisenstein integers fails."""


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    """The Eisenstein integer ``x + y*w``."""

    x: int = 0
    y: int = 0

    def __add__(self, other: EisensteinInt) -> EisensteinInt:
        other = _coerce(other)
        return EisensteinInt(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.x, -self.y)

    def __sub__(self, other: EisensteinInt) -> EisensteinInt:
        other = _coerce(other)
        return EisensteinInt(self.x - other.x, self.y - other.y)

    def __rsub__(self, other) -> EisensteinInt:
        return _coerce(other) - self

    def __mul__(self, other: EisensteinInt) -> EisensteinInt:
        other = _coerce(other)
        # (x1 + y1 w)(x2 + y2 w) with w^2 = w - 1
        a, b, c, d = self.x, self.y, other.x, other.y
        return EisensteinInt(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conj(self) -> EisensteinInt:
        # conj(w) = 1 - w
        return EisensteinInt(self.x + self.y, -self.y)

    def norm(self) -> int:
        return self.x * self.x + self.x * self.y + self.y * self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def divmod(self, other: EisensteinInt) -> tuple[EisensteinInt, EisensteinInt]:
        """Euclidean division: ``self = q*other + r`` with ``norm(r) < norm(other)``."""
        other = _coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in O_K")
        num = self * other.conj()
        q = EisensteinInt(_round_div(num.x, n), _round_div(num.y, n))
        r = self - q * other
        if r.norm() >= n:
            # nearest-lattice-point rounding in the (1, w) basis can miss by one step
            best = (r.norm(), q, r)
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    qq = EisensteinInt(q.x + dx, q.y + dy)
                    rr = self - qq * other
                    if rr.norm() < best[0]:
                        best = (rr.norm(), qq, rr)
            _, q, r = best
        return q, r

    def exact_div(self, other: EisensteinInt) -> EisensteinInt:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NotDivisibleError(f"{other} does not divide {self}")
        return q

    def to_k(self) -> KElement:
        return KElement(Fraction(self.x), Fraction(self.y))

    def __complex__(self) -> complex:
        return complex(self.x + 0.5 * self.y, self.y * 0.8660254037844386)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.x}, {self.y})"


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def _coerce(z) -> EisensteinInt:
    if isinstance(z, EisensteinInt):
        return z
    if isinstance(z, int):
        return EisensteinInt(z, 0)
    raise TypeError(f"cannot coerce {z!r} to EisensteinInt")


OMEGA = EisensteinInt(0, 1)
THETA = EisensteinInt(-1, 2)  # 2w - 1 = sqrt(-3)
UNITS: tuple[EisensteinInt, ...] = (
    EisensteinInt(1, 0),
    EisensteinInt(0, 1),
    EisensteinInt(-1, 1),
    EisensteinInt(-1, 0),
    EisensteinInt(0, -1),
    EisensteinInt(1, -1),
)


def residue_mod_theta(z: EisensteinInt) -> int:
    """Image of ``z`` under ``O_K -> O_K/theta = F_3``, in ``{0, 1, 2}``."""
    # w = 2 (mod theta) since 2w - 1 = theta
    return (z.x + 2 * z.y) % 3


def lift_residue(r: int) -> EisensteinInt:
    return EisensteinInt(r % 3, 0)


def theta_divide(z: EisensteinInt) -> EisensteinInt:
    """Return ``z / theta``; raise :class:`NotDivisibleError` unless ``theta | z``."""
    if residue_mod_theta(z) != 0:
        raise NotDivisibleError(f"theta does not divide {z}")
    # 1/theta = -theta/3, and theta = -1 + 2w
    num = z * EisensteinInt(1, -2)
    return EisensteinInt(num.x // 3, num.y // 3)


Number = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class KElement:
    """An element ``x + y*w`` of ``K = Q(sqrt(-3))`` with rational coordinates."""

    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def coerce(cls, z) -> KElement:
        if isinstance(z, KElement):
            return z
        if isinstance(z, EisensteinInt):
            return z.to_k()
        if isinstance(z, (int, Fraction)):
            return cls(Fraction(z), Fraction(0))
        raise TypeError(f"cannot coerce {z!r} to KElement")

    def __add__(self, other) -> KElement:
        other = KElement.coerce(other)
        return KElement(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self) -> KElement:
        return KElement(-self.x, -self.y)

    def __sub__(self, other) -> KElement:
        other = KElement.coerce(other)
        return KElement(self.x - other.x, self.y - other.y)

    def __rsub__(self, other) -> KElement:
        return KElement.coerce(other) - self

    def __mul__(self, other) -> KElement:
        other = KElement.coerce(other)
        a, b, c, d = self.x, self.y, other.x, other.y
        return KElement(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conj(self) -> KElement:
        return KElement(self.x + self.y, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x + self.x * self.y + self.y * self.y

    def inverse(self) -> KElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in K")
        c = self.conj()
        return KElement(c.x / n, c.y / n)

    def __truediv__(self, other) -> KElement:
        return self * KElement.coerce(other).inverse()

    def __rtruediv__(self, other) -> KElement:
        return KElement.coerce(other) * self.inverse()

    def real(self) -> Fraction:
        return self.x + self.y / 2

    def is_rational(self) -> bool:
        return self.y == 0

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def to_int(self) -> EisensteinInt:
        if not self.is_integral():
            raise NotDivisibleError(f"{self} is not an Eisenstein integer")
        return EisensteinInt(int(self.x), int(self.y))

    def __eq__(self, other) -> bool:
        try:
            other = KElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return f"KElement({self.x}, {self.y})"
