"""Exact rotation angles measured in full turns."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Angle", "T", "TDG", "S", "SDG", "Z"]


class Angle:
    """A rational rotation angle reduced into [0, 1).

    ``R_Z(theta)`` applies ``exp(2*pi*i*theta*x)`` to basis state ``|x>``, so
    angles differing by an integer are the same rotation.

    Args:
        value: numerator, a ``Fraction``, an ``Angle`` or a string like ``"3/8"``.
        denominator: optional denominator when ``value`` is an integer.
    """

    __slots__ = ("_q",)

    def __init__(self, value: int | str | Rational | Angle = 0, denominator: int | None = None):
        if isinstance(value, Angle):
            q = value._q
        elif denominator is not None:
            q = Fraction(value, denominator)
        else:
            q = Fraction(value)
        self._q = q - (q.numerator // q.denominator)

    @property
    def numerator(self) -> int:
        return self._q.numerator

    @property
    def denominator(self) -> int:
        return self._q.denominator

    @property
    def fraction(self) -> Fraction:
        """The angle as a ``Fraction`` in [0, 1)."""
        return self._q

    def is_zero(self) -> bool:
        return self._q == 0

    def is_dyadic(self) -> bool:
        """True when the denominator is a power of two."""
        d = self._q.denominator
        return d & (d - 1) == 0

    def is_t_type(self) -> bool:
        """True for odd multiples of 1/8, the angles that cost a T gate."""
        return self._q.denominator == 8

    def __add__(self, other) -> Angle:
        return Angle(self._q + Angle(other)._q)

    __radd__ = __add__

    def __sub__(self, other) -> Angle:
        return Angle(self._q - Angle(other)._q)

    def __neg__(self) -> Angle:
        return Angle(-self._q)

    def __mul__(self, k: int) -> Angle:
        return Angle(self._q * k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Angle):
            return self._q == other._q
        if isinstance(other, (int, Rational)):
            return self._q == Angle(other)._q
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Angle", self._q))

    def __bool__(self) -> bool:
        return self._q != 0

    def __float__(self) -> float:
        return float(self._q)

    def __str__(self) -> str:
        return f"{self._q.numerator}/{self._q.denominator}"

    def __repr__(self) -> str:
        return f"Angle({self})"


T = Angle(1, 8)
TDG = Angle(7, 8)
S = Angle(1, 4)
SDG = Angle(3, 4)
Z = Angle(1, 2)
