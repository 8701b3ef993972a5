"""Phase polynomials, sum-over-paths forms and Fourier identities.

A phase polynomial ``f`` over ``n`` variables is a map from nonzero parity
indicators ``y`` to angles; it stands for ``f(x) = sum_y f[y] * chi_y(x)``
where ``chi_y(x)`` is the parity of ``x & y``. A CNOT+RZ circuit acts as
``|x> -> exp(2 pi i f(x)) |A x>`` and the pair ``(f, A)`` is its sum-over-paths
form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np

from .angles import Angle
from .circuit import CNOT, RZ, Circuit
from .errors import (
    ArityMismatch,
    ArityTooLarge,
    PreconditionViolated,
    UnsupportedGate,
    ZeroIndicator,
)
from .f2linear import BitMatrix, BitVec, parity

__all__ = [
    "Angle",
    "PhasePolynomial",
    "FourierExpansion",
    "SumOverPaths",
    "MultilinearPoly",
    "extract_sop",
    "evaluate",
    "equivalent_sop",
    "monomial_fourier",
    "multilinear_to_fourier",
    "support_minimality_check",
    "to_multiplicative",
    "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 20


def _key(y, n: int) -> int:
    if isinstance(y, BitVec):
        if y.n != n:
            raise ArityMismatch(f"indicator of length {y.n} in a {n}-ary polynomial")
        return y.value
    if isinstance(y, str):
        return _key(BitVec(y), n)
    if isinstance(y, int):
        if y < 0 or y >> n:
            raise ArityMismatch(f"indicator {y} does not fit in {n} bits")
        return y
    return _key(BitVec(y), n)


def _point(x, n: int) -> int:
    if isinstance(x, int):
        if x < 0 or x >> n:
            raise ArityMismatch(f"point {x} does not fit in {n} bits")
        return x
    x = BitVec(x)
    if x.n != n:
        raise ArityMismatch(f"point of length {x.n} for arity {n}")
    return x.value


class PhasePolynomial:
    """A finite map from nonzero parities to nonzero angles.

    Coefficients are kept reduced mod 1; zero coefficients and the constant
    term are discarded on construction. Keys may be given as ``BitVec``,
    bitstrings or packed ints. Iteration order is insertion order.

    Args:
        n: arity.
        terms: mapping from parity indicator to an angle-like value.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        if n < 1:
            raise ValueError("arity must be positive")
        self.n = n
        self._terms: dict[int, Angle] = {}
        for y, a in (terms or {}).items():
            self._add(_key(y, n), Angle(a))

    def _add(self, y: int, a: Angle) -> None:
        if y == 0:
            return
        total = self._terms.get(y, Angle(0)) + a
        if total:
            self._terms[y] = total
        else:
            self._terms.pop(y, None)

    def add_term(self, y, angle) -> None:
        """Add ``angle`` to the coefficient of ``y`` in place."""
        self._add(_key(y, self.n), Angle(angle))

    def coefficient(self, y) -> Angle:
        return self._terms.get(_key(y, self.n), Angle(0))

    def support(self) -> list[BitVec]:
        return [BitVec.from_int(y, self.n) for y in self._terms]

    def keys(self) -> list[int]:
        """Support as packed ints."""
        return list(self._terms)

    def items(self) -> Iterator[tuple[BitVec, Angle]]:
        for y, a in self._terms.items():
            yield BitVec.from_int(y, self.n), a

    def int_items(self) -> Iterator[tuple[int, Angle]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: PhasePolynomial) -> PhasePolynomial:
        if self.n != other.n:
            raise ArityMismatch(f"arities {self.n} and {other.n}")
        out = PhasePolynomial(self.n, self._terms)
        for y, a in other._terms.items():
            out._add(y, a)
        return out

    def __neg__(self) -> PhasePolynomial:
        return PhasePolynomial(self.n, {y: -a for y, a in self._terms.items()})

    def __sub__(self, other: PhasePolynomial) -> PhasePolynomial:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __repr__(self) -> str:
        body = ", ".join(f"{BitVec.from_int(y, self.n)}: {a}" for y, a in self._terms.items())
        return f"PhasePolynomial({self.n}, {{{body}}})"


class FourierExpansion:
    """Exact rational Fourier coefficients, not reduced mod 1.

    Used where the real-valued function matters and not just its phase,
    e.g. for expansions of integer-valued polynomials. The key ``0`` holds a
    constant term.

    Args:
        n: arity.
        coeffs: mapping from parity indicator to a rational.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping | None = None):
        self.n = n
        self.coeffs: dict[int, Fraction] = {}
        for y, c in (coeffs or {}).items():
            self.add_term(_key(y, n), Fraction(c))

    def add_term(self, y: int, c: Fraction) -> None:
        total = self.coeffs.get(y, Fraction(0)) + c
        if total:
            self.coeffs[y] = total
        else:
            self.coeffs.pop(y, None)

    def coefficient(self, y) -> Fraction:
        return self.coeffs.get(_key(y, self.n), Fraction(0))

    def support(self) -> set[int]:
        """Nonconstant support as packed ints."""
        return {y for y in self.coeffs if y}

    def is_dyadic(self) -> bool:
        return all(c.denominator & (c.denominator - 1) == 0 for c in self.coeffs.values())

    def evaluate(self, x) -> Fraction:
        xv = _point(x, self.n)
        return sum((c for y, c in self.coeffs.items() if y == 0 or parity(xv & y)), Fraction(0))

    def to_phase_polynomial(self) -> PhasePolynomial:
        """Reduce mod 1 and drop the constant term."""
        return PhasePolynomial(self.n, {y: c for y, c in self.coeffs.items() if y})

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierExpansion):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = ", ".join(f"{BitVec.from_int(y, self.n)}: {c}" for y, c in self.coeffs.items())
        return f"FourierExpansion({self.n}, {{{body}}})"


@dataclass(frozen=True)
class SumOverPaths:
    """The pair ``(f, A)`` describing a CNOT+RZ circuit."""

    phase: PhasePolynomial
    transform: BitMatrix

    def __post_init__(self):
        if self.transform.shape != (self.phase.n, self.phase.n):
            raise ArityMismatch("phase arity and transform size differ")

    @property
    def n(self) -> int:
        return self.phase.n


class MultilinearPoly:
    """Integer multilinear polynomial ``sum_y a_y * prod_{i in y} x_i``.

    Args:
        n: arity.
        terms: mapping from monomial indicator (``0`` for the constant) to
            an integer coefficient.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        self.terms: dict[int, int] = {}
        for y, a in (terms or {}).items():
            if int(a) != a:
                raise ValueError(f"coefficient {a!r} is not an integer")
            y = _key(y, n)
            total = self.terms.get(y, 0) + int(a)
            if total:
                self.terms[y] = total
            else:
                self.terms.pop(y, None)

    def evaluate(self, x) -> int:
        xv = _point(x, self.n)
        return sum(a for y, a in self.terms.items() if y & xv == y)


def extract_sop(C: Circuit) -> SumOverPaths:
    """Sum-over-paths form of a CNOT+RZ circuit.

    Every wire is labelled with the parity it holds; each RZ adds its angle
    to the label of its wire.

    Raises:
        UnsupportedGate: for any gate other than CNOT or RZ.
    """
    n = C.n
    rows = [1 << i for i in range(n)]
    f = PhasePolynomial(n)
    for g in C:
        if g.kind == CNOT:
            c, t = g.wires
            rows[t - 1] ^= rows[c - 1]
        elif g.kind == RZ:
            f._add(rows[g.wires[0] - 1], g.angle)
        else:
            raise UnsupportedGate(f"{g!r} has no sum-over-paths form here")
    return SumOverPaths(f, BitMatrix.from_ints(rows, n))


def evaluate(f: PhasePolynomial, x) -> Fraction:
    """``sum_y f[y] * chi_y(x)`` as an exact rational, not reduced mod 1.

    Raises:
        ArityMismatch: if ``x`` has the wrong length.
    """
    xv = _point(x, f.n)
    return sum((a.fraction for y, a in f.int_items() if parity(xv & y)), Fraction(0))


def _walsh_hadamard(a: np.ndarray, n: int) -> np.ndarray:
    for i in range(n):
        a = a.reshape(-1, 2, 1 << i)
        a = np.concatenate((a[:, 0, :] + a[:, 1, :], a[:, 0, :] - a[:, 1, :]), axis=1)
    return a.reshape(-1)


def _all_values_scaled(coeffs: dict[int, int], n: int, dtype) -> np.ndarray:
    """``2 * sum_y c_y chi_y(x)`` for every ``x`` via one Walsh-Hadamard transform."""
    a = np.zeros(1 << n, dtype=dtype)
    for y, c in coeffs.items():
        a[y] += c
    total = sum(coeffs.values())
    return total - _walsh_hadamard(a, n)


def equivalent_sop(s1: SumOverPaths, s2: SumOverPaths) -> bool:
    """True when both forms describe the same unitary.

    That holds exactly when the transforms agree and ``f1 - f2`` is integer
    valued, which is checked at every point of ``F_2^n``.

    Raises:
        ArityMismatch: if the arities differ.
        ArityTooLarge: above ``EXHAUSTIVE_LIMIT`` variables.
    """
    n = s1.n
    if s2.n != n:
        raise ArityMismatch(f"arities {n} and {s2.n}")
    if n > EXHAUSTIVE_LIMIT:
        raise ArityTooLarge(f"exhaustive check limited to {EXHAUSTIVE_LIMIT} variables")
    if s1.transform != s2.transform:
        return False
    diff = s1.phase - s2.phase
    if not diff:
        return True
    scale = math.lcm(*(a.denominator for _, a in diff.int_items()))
    coeffs = {y: a.numerator * (scale // a.denominator) for y, a in diff.int_items()}
    bound = 2 * scale * len(coeffs)
    dtype = np.int64 if bound < 2**62 else object
    values = _all_values_scaled(coeffs, n, dtype)
    # values hold 2 * scale * (f1 - f2)(x); integrality means divisibility by 2 * scale
    return not np.any(values % (2 * scale))


def monomial_fourier(y) -> FourierExpansion:
    """Fourier expansion of the monomial ``x^y = prod_{i in y} x_i``.

    Each sub-parity ``y' <= y`` gets ``(-1)^(|y'|-1) / 2^(|y|-1)``.

    Raises:
        ZeroIndicator: if ``y`` is zero.
    """
    y = BitVec(y)
    if y.is_zero():
        raise ZeroIndicator("the empty monomial is a constant")
    return _monomial(y.value, y.n)


def _monomial(y: int, n: int) -> FourierExpansion:
    w = y.bit_count()
    scale = Fraction(1, 1 << (w - 1))
    out = FourierExpansion(n)
    sub = y
    while sub:
        out.coeffs[sub] = scale if sub.bit_count() & 1 else -scale
        sub = (sub - 1) & y
    return out


def multilinear_to_fourier(k: MultilinearPoly) -> FourierExpansion:
    """Fourier expansion of an integer multilinear polynomial.

    The result is exact and keeps the constant term under key ``0``, so its
    evaluation equals ``k`` pointwise; all coefficients are dyadic.
    """
    out = FourierExpansion(k.n)
    for y, a in k.terms.items():
        if y == 0:
            out.add_term(0, Fraction(a))
            continue
        for sub, c in _monomial(y, k.n).coeffs.items():
            out.add_term(sub, a * c)
    return out


def support_minimality_check(f: PhasePolynomial, k: MultilinearPoly) -> bool:
    """Whether adding an integer-valued ``k`` keeps every parity of ``f``.

    Always true when no coefficient of ``f`` is dyadic, since a dyadic
    correction cannot cancel a non-dyadic coefficient.

    Raises:
        PreconditionViolated: if some coefficient of ``f`` is dyadic.
        ArityMismatch: if arities differ.
    """
    if f.n != k.n:
        raise ArityMismatch(f"arities {f.n} and {k.n}")
    if any(a.is_dyadic() for _, a in f.int_items()):
        raise PreconditionViolated("f has a dyadic coefficient")
    g = multilinear_to_fourier(k)
    for y, a in f.int_items():
        g.add_term(y, a.fraction)
    return set(f.keys()) <= g.support()


def to_multiplicative(f) -> dict[BitVec, Fraction]:
    """Coefficients over the characters ``(-1)^chi_y``.

    Since ``chi_y = (1 - (-1)^chi_y) / 2``, the constant gets half the sum of
    all coefficients and each parity gets minus half its coefficient. The
    result satisfies ``sum_y g[y] * (-1)^chi_y(x) == evaluate(f, x)``.

    Args:
        f: a ``PhasePolynomial`` or ``FourierExpansion``.
    """
    if isinstance(f, PhasePolynomial):
        items = [(y, a.fraction) for y, a in f.int_items()]
    else:
        items = list(f.coeffs.items())
    n = f.n
    const = Fraction(0)
    out: dict[BitVec, Fraction] = {}
    for y, c in items:
        if y == 0:
            const += c
            continue
        const += c / 2
        out[BitVec.from_int(y, n)] = -c / 2
    return {BitVec.zeros(n): const, **out}
