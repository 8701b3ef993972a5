"""Exact classical simulation and dense unitary checks for small circuits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circuit import CCZ, CNOT, H, MCX, NOT, RZ, TOFFOLI, Circuit
from .errors import ArityMismatch, TooManyQubits, UnsupportedGate
from .f2linear import BitVec

__all__ = [
    "BasisOutcome",
    "simulate_classical",
    "simulate_unitary",
    "equivalent_unitary",
    "MAX_QUBITS",
    "DEFAULT_TOL",
]

MAX_QUBITS = 12
DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class BasisOutcome:
    """Result of running an H-free circuit on a basis state.

    Attributes:
        phase: output phase in turns, reduced into [0, 1).
        bits: output basis state.
    """

    phase: Fraction
    bits: BitVec


def _mask(wires) -> int:
    return sum(1 << (w - 1) for w in wires)


def simulate_classical(C: Circuit, x) -> BasisOutcome:
    """Run ``C`` on ``|x>`` exactly.

    Supports CNOT, NOT, RZ, Toffoli, multi-controlled X and CCZ.

    Raises:
        UnsupportedGate: on H.
        ArityMismatch: if ``x`` has the wrong length.
    """
    x = BitVec(x) if not isinstance(x, int) else BitVec.from_int(x, C.n)
    if x.n != C.n:
        raise ArityMismatch(f"length-{x.n} input for {C.n} wires")
    v = x.value
    phase = Fraction(0)
    for g in C:
        k = g.kind
        if k == RZ:
            if v >> (g.wires[0] - 1) & 1:
                phase += g.angle.fraction
        elif k == NOT:
            v ^= 1 << (g.wires[0] - 1)
        elif k in (CNOT, TOFFOLI, MCX):
            ctrl = _mask(g.controls)
            if v & ctrl == ctrl:
                v ^= 1 << (g.target - 1)
        elif k == CCZ:
            m = _mask(g.wires)
            if v & m == m:
                phase += Fraction(1, 2)
        else:
            raise UnsupportedGate(f"{g!r} does not map basis states to basis states")
    return BasisOutcome(phase - math.floor(phase), BitVec.from_int(v, C.n))


def simulate_unitary(C: Circuit) -> np.ndarray:
    """Dense unitary of ``C``.

    Basis index ``x`` has bit ``i - 1`` equal to wire ``i``; column ``x`` is the
    image of ``|x>``.

    Raises:
        TooManyQubits: above ``MAX_QUBITS`` wires.
    """
    n = C.n
    if n > MAX_QUBITS:
        raise TooManyQubits(f"{n} wires exceeds the dense limit of {MAX_QUBITS}")
    dim = 1 << n
    U = np.eye(dim, dtype=np.complex128)
    idx = np.arange(dim)
    r2 = 1 / math.sqrt(2)
    for g in C:
        k = g.kind
        if k == H:
            b = 1 << (g.wires[0] - 1)
            lo = idx[(idx & b) == 0]
            hi = lo | b
            a, c = U[lo], U[hi]
            U[lo], U[hi] = (a + c) * r2, (a - c) * r2
        elif k == RZ:
            b = 1 << (g.wires[0] - 1)
            ph = np.exp(2j * math.pi * float(g.angle.fraction))
            U[(idx & b) != 0] *= ph
        elif k == CCZ:
            m = _mask(g.wires)
            U[(idx & m) == m] *= -1
        elif k in (CNOT, TOFFOLI, MCX, NOT):
            ctrl = _mask(g.controls)
            flip = np.where((idx & ctrl) == ctrl, idx ^ (1 << (g.target - 1)), idx)
            U = U[flip]
        else:
            raise UnsupportedGate(f"{g!r}")
    return U


def equivalent_unitary(C1: Circuit, C2: Circuit, tol: float = DEFAULT_TOL) -> bool:
    """True when the circuits agree up to a global phase.

    The phase is fixed by the largest-magnitude entry of the first unitary,
    then the largest entrywise deviation is compared against ``tol``.

    Raises:
        ArityMismatch: if the wire counts differ.
        TooManyQubits: above ``MAX_QUBITS`` wires.
    """
    if C1.n != C2.n:
        raise ArityMismatch(f"{C1.n} wires against {C2.n}")
    U1 = simulate_unitary(C1)
    U2 = simulate_unitary(C2)
    k = np.unravel_index(np.argmax(np.abs(U1)), U1.shape)
    if abs(U2[k]) < 1e-12:
        return False
    lam = U1[k] / U2[k]
    lam /= abs(lam)
    return float(np.max(np.abs(U1 - lam * U2))) <= tol
