"""Gate and circuit containers.

Wires are numbered from 1. A circuit optionally carries wire names, which the
text format uses; when absent, wires are called ``x1 .. xn``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .angles import Angle

__all__ = ["Gate", "Circuit", "CNOT", "NOT", "H", "RZ", "TOFFOLI", "MCX", "CCZ"]

CNOT = "CNOT"
NOT = "NOT"
H = "H"
RZ = "RZ"
TOFFOLI = "TOFFOLI"
MCX = "MCX"
CCZ = "CCZ"

_ARITY = {CNOT: 2, NOT: 1, H: 1, RZ: 1, TOFFOLI: 3, CCZ: 3}


@dataclass(frozen=True)
class Gate:
    """One gate.

    For controlled gates the target is the last wire; ``CCZ`` is symmetric.
    ``angle`` is set only for ``RZ``.
    """

    kind: str
    wires: tuple[int, ...]
    angle: Angle | None = None

    def __post_init__(self):
        want = _ARITY.get(self.kind)
        if self.kind == MCX:
            if len(self.wires) < 2:
                raise ValueError("MCX needs at least one control")
        elif want is None:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        elif len(self.wires) != want:
            raise ValueError(f"{self.kind} takes {want} wires, got {len(self.wires)}")
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"repeated wire in {self.kind}{self.wires}")
        if min(self.wires) < 1:
            raise ValueError("wires are 1-based")
        if (self.kind == RZ) != (self.angle is not None):
            raise ValueError("angle is required for RZ and only for RZ")

    @staticmethod
    def cnot(control: int, target: int) -> Gate:
        return Gate(CNOT, (control, target))

    @staticmethod
    def x(target: int) -> Gate:
        return Gate(NOT, (target,))

    @staticmethod
    def h(target: int) -> Gate:
        return Gate(H, (target,))

    @staticmethod
    def rz(angle, target: int) -> Gate:
        return Gate(RZ, (target,), Angle(angle))

    @staticmethod
    def toffoli(c1: int, c2: int, target: int) -> Gate:
        return Gate(TOFFOLI, (c1, c2, target))

    @staticmethod
    def mcx(controls: Sequence[int], target: int) -> Gate:
        return Gate(MCX, (*controls, target))

    @staticmethod
    def ccz(a: int, b: int, c: int) -> Gate:
        return Gate(CCZ, (a, b, c))

    @property
    def target(self) -> int:
        return self.wires[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.wires[:-1]

    def __repr__(self) -> str:
        if self.kind == RZ:
            return f"RZ({self.angle}, {self.wires[0]})"
        return f"{self.kind}{self.wires}"


@dataclass
class Circuit:
    """An ordered gate list on ``n`` wires.

    Args:
        n: wire count.
        gates: initial gates.
        names: optional wire names, one per wire.
    """

    n: int
    gates: list[Gate] = field(default_factory=list)
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        self.gates = list(self.gates)
        if self.names is not None:
            self.names = tuple(self.names)
            if len(self.names) != self.n:
                raise ValueError("one name per wire")
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        if max(g.wires) > self.n:
            raise ValueError(f"{g!r} touches a wire beyond {self.n}")

    def append(self, g: Gate) -> None:
        self._check(g)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def copy(self) -> Circuit:
        return Circuit(self.n, list(self.gates), self.names)

    def wire_names(self) -> tuple[str, ...]:
        """Declared names, or ``x1 .. xn`` when none were given."""
        if self.names is not None:
            return self.names
        return tuple(f"x{i}" for i in range(1, self.n + 1))

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def cnot_count(self) -> int:
        return self.count(CNOT)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n == other.n and self.gates == other.gates
