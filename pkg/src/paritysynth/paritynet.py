"""Parity-network synthesis.

A CNOT circuit is a parity network for a set ``S`` of parities when every
member of ``S`` is held by some wire at some point. Inserting one RZ at such a
point for each term of a phase polynomial gives a circuit for it, so the cost
of a phase circuit is the cost of the parity network behind it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .circuit import CNOT, RZ, Circuit, Gate
from .errors import (
    ArityMismatch,
    DuplicateParity,
    InfeasibleParity,
    NoCommonTarget,
    SingularMatrix,
    UnsupportedGate,
    ZeroParity,
)
from .f2linear import BitMatrix, BitVec, generalized_inverse, invert, pmh_synthesize
from .phasepoly import PhasePolynomial

__all__ = [
    "ParitySet",
    "ParityTrace",
    "annotate",
    "is_parity_network",
    "gray_synth",
    "synth_pointed",
    "synth_phase_circuit",
    "find_preimage",
    "PreimageSolver",
    "synth_encoded",
    "fixed_target_synth",
    "tour_to_circuit",
]


class ParitySet:
    """An ordered set of distinct nonzero parities over ``n`` variables.

    Members may be ``BitVec``, bitstrings or packed ints.

    Raises:
        DuplicateParity: a member repeats.
        ZeroParity: a member is zero.
    """

    __slots__ = ("n", "_members", "_index")

    def __init__(self, n: int, members: Iterable = ()):
        self.n = n
        self._members: list[int] = []
        self._index: set[int] = set()
        for y in members:
            self.add(y)

    def add(self, y) -> None:
        if isinstance(y, int):
            v = y
            if v < 0 or v >> self.n:
                raise ArityMismatch(f"{y} does not fit in {self.n} bits")
        else:
            y = BitVec(y)
            if y.n != self.n:
                raise ArityMismatch(f"length-{y.n} parity in a {self.n}-ary set")
            v = y.value
        if v == 0:
            raise ZeroParity("the zero parity is not allowed")
        if v in self._index:
            raise DuplicateParity(f"{BitVec.from_int(v, self.n)} appears twice")
        self._members.append(v)
        self._index.add(v)

    @classmethod
    def full(cls, n: int) -> ParitySet:
        """All nonzero parities of ``n`` variables."""
        return cls(n, range(1, 1 << n))

    @property
    def values(self) -> list[int]:
        """Members as packed ints, in insertion order."""
        return list(self._members)

    def members(self) -> list[BitVec]:
        return [BitVec.from_int(v, self.n) for v in self._members]

    def __contains__(self, y) -> bool:
        v = y if isinstance(y, int) else BitVec(y).value
        return v in self._index

    def __iter__(self):
        return iter(self.members())

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParitySet):
            return NotImplemented
        return self.n == other.n and self._index == other._index

    def __repr__(self) -> str:
        return f"ParitySet({self.n}, [{', '.join(str(m) for m in self.members())}])"


@dataclass
class ParityTrace:
    """Wire-by-wire parity labels of a CNOT circuit.

    Attributes:
        n: wire count.
        wires: ``wires[i]`` lists the packed parities held by wire ``i + 1``,
            starting with its input variable.
        union: every parity that appears anywhere.
    """

    n: int
    wires: list[list[int]]
    union: set[int]

    def final(self) -> list[int]:
        return [w[-1] for w in self.wires]

    def union_vectors(self) -> set[BitVec]:
        return {BitVec.from_int(v, self.n) for v in self.union}


def annotate(C: Circuit, n: int | None = None) -> ParityTrace:
    """Label every wire of ``C`` with the parity it carries.

    RZ gates leave labels unchanged and are skipped.

    Raises:
        UnsupportedGate: for gates other than CNOT and RZ.
    """
    n = C.n if n is None else n
    state = [1 << i for i in range(n)]
    wires = [[v] for v in state]
    union = set(state)
    for g in C:
        if g.kind == CNOT:
            c, t = g.wires
            state[t - 1] ^= state[c - 1]
            wires[t - 1].append(state[t - 1])
            union.add(state[t - 1])
        elif g.kind != RZ:
            raise UnsupportedGate(f"{g!r} in a parity network")
    return ParityTrace(n, wires, union)


def _as_set(S, n: int | None = None) -> ParitySet:
    if isinstance(S, ParitySet):
        return S
    if n is None:
        raise ValueError("arity is required when S is not a ParitySet")
    return ParitySet(n, S)


def is_parity_network(C: Circuit, S: ParitySet) -> bool:
    """True when every parity of ``S`` labels some wire of ``C``."""
    union = annotate(C, S.n).union
    return all(v in union for v in S.values)


def gray_synth(
    S: ParitySet,
    observer: Callable[[list[int], dict[int, int]], None] | None = None,
) -> tuple[Circuit, BitMatrix]:
    """Parity network for ``S`` by recursive cofactor splitting.

    Parities are split on the variable that leaves the largest cofactor, so
    that sets sharing many variables are reached with one CNOT each, in the
    manner of a Gray code. Ties go to the smallest index and the 0-cofactor
    is handled first. After each CNOT(c -> t) the pending parities are
    rewritten by ``y_c ^= y_t`` so they stay expressed over current wires.

    Args:
        S: nonzero parities.
        observer: called as ``observer(rows, pending)`` after every CNOT with
            the current wire parities and a map from original to rewritten
            pending parities; meant for tests.

    Returns:
        ``(C, A_out)`` where ``A_out`` is the linear map of ``C``.
    """
    n = S.n
    orig = S.values
    cur = list(orig)
    rows = [1 << i for i in range(n)]
    gates: list[Gate] = []
    # entries are (member indices, free variables, target or None)
    stack: list[tuple[list[int], list[int], int | None]] = [(list(range(len(cur))), list(range(n)), None)]

    while stack:
        members, free, i = stack.pop()
        if not members:
            continue
        if i is not None:
            ibit = 1 << i
            while True:
                j = next(
                    (j for j in range(n) if j != i and all(cur[k] >> j & 1 for k in members)),
                    None,
                )
                if j is None:
                    break
                gates.append(Gate.cnot(j + 1, i + 1))
                rows[i] ^= rows[j]
                jbit = 1 << j
                for k in range(len(cur)):
                    if cur[k] & ibit:
                        cur[k] ^= jbit
                if observer is not None:
                    live = {k for entry in stack for k in entry[0]} | set(members)
                    observer(list(rows), {orig[k]: cur[k] for k in live})
        if not free:
            continue
        best, best_size = free[0], -1
        for j in free:
            ones = sum(cur[k] >> j & 1 for k in members)
            size = max(ones, len(members) - ones)
            if size > best_size:
                best, best_size = j, size
        j = best
        rest = [v for v in free if v != j]
        s0 = [k for k in members if not cur[k] >> j & 1]
        s1 = [k for k in members if cur[k] >> j & 1]
        stack.append((s1, rest, j if i is None else i))
        stack.append((s0, rest, i))

    return Circuit(n, gates), BitMatrix.from_ints(rows, n)


def synth_pointed(S: ParitySet, A_target: BitMatrix | None = None) -> Circuit:
    """Parity network for ``S`` whose overall linear map is ``A_target``.

    Runs ``gray_synth`` and appends a PMH circuit for the residual map.

    Args:
        S: parities to cover.
        A_target: desired map; the identity when omitted.

    Raises:
        SingularMatrix: if ``A_target`` is not invertible.
    """
    n = S.n
    if A_target is None:
        A_target = BitMatrix.identity(n)
    if A_target.shape != (n, n):
        raise ArityMismatch(f"target of shape {A_target.shape} for {n} wires")
    if not A_target.is_invertible():
        raise SingularMatrix("target transform is singular")
    C, A_out = gray_synth(S)
    tail = pmh_synthesize(A_target @ invert(A_out))
    C.extend(tail.gates)
    return C


def place_rotations(C: Circuit, terms: dict[int, object]) -> Circuit:
    """Insert ``RZ(terms[y])`` where parity ``y`` first appears in ``C``.

    Args:
        C: CNOT-only circuit that covers every key of ``terms``.
        terms: map from packed parity to an angle.

    Raises:
        InfeasibleParity: if some key never appears.
    """
    n = C.n
    todo = dict(terms)
    state = [1 << i for i in range(n)]
    out = Circuit(n, names=C.names)

    def emit(w: int) -> None:
        a = todo.pop(state[w], None)
        if a is not None:
            out.append(Gate.rz(a, w + 1))

    for w in range(n):
        emit(w)
    for g in C:
        out.append(g)
        if g.kind == CNOT:
            c, t = g.wires
            state[t - 1] ^= state[c - 1]
            emit(t - 1)
    if todo:
        missing = ", ".join(str(BitVec.from_int(y, n)) for y in todo)
        raise InfeasibleParity(f"parities never produced: {missing}")
    return out


def synth_phase_circuit(f: PhasePolynomial, A_target: BitMatrix | None = None) -> Circuit:
    """CNOT+RZ circuit with sum-over-paths form ``(f, A_target)``.

    Each term gets one RZ, placed where its parity first appears in the
    pointed network for the support of ``f``.
    """
    S = ParitySet(f.n, f.keys())
    C = synth_pointed(S, A_target)
    return place_rotations(C, dict(f.int_items()))


class PreimageSolver:
    """Solves ``E^T w = y`` for a fixed encoder ``E`` (``m x n``).

    Wire ``k`` of an encoded register holds ``E.row(k)`` over ``n`` logical
    variables, so the wire parity ``w`` computes the logical parity
    ``E^T w``.
    """

    def __init__(self, E: BitMatrix):
        self.E = E
        self.Et = E.transpose()
        self.G = generalized_inverse(self.Et)

    def __call__(self, y) -> BitVec:
        y = BitVec(y) if not isinstance(y, int) else BitVec.from_int(y, self.E.ncols)
        if y.n != self.E.ncols:
            raise ArityMismatch(f"length-{y.n} parity for {self.E.ncols} variables")
        w = self.G @ y
        if self.Et @ w != y:
            raise InfeasibleParity(f"{y} is outside the span of the encoder rows")
        return w


def find_preimage(E: BitMatrix, y) -> BitVec:
    """A wire parity ``w`` with ``E^T w = y``, from the generalized inverse.

    Raises:
        InfeasibleParity: if no such ``w`` exists.
    """
    return PreimageSolver(E)(y)


def synth_encoded(S: ParitySet, E: BitMatrix) -> Circuit:
    """Parity network over encoded inputs.

    Wire ``k`` starts in state ``E.row(k)``; each target parity is mapped to
    a wire parity through ``find_preimage`` and the resulting set is handed to
    ``gray_synth`` on ``m`` wires.

    Raises:
        InfeasibleParity: if some parity is unreachable.
    """
    if E.ncols != S.n:
        raise ArityMismatch(f"encoder has {E.ncols} columns for {S.n} variables")
    solve = PreimageSolver(E)
    pre = ParitySet(E.nrows)
    for y in S.values:
        w = solve(y).value
        if w not in pre:
            pre.add(w)
    return gray_synth(pre)[0]


def tour_to_circuit(flips: Iterable[int], n: int, target: int) -> Circuit:
    """Fixed-target circuit from a hypercube tour: flip ``i`` becomes ``CNOT(i -> target)``."""
    gates = []
    for i in flips:
        if i == target or not 1 <= i <= n:
            raise ValueError(f"flip {i} is not a valid control for target {target}")
        gates.append(Gate.cnot(i, target))
    return Circuit(n, gates)


def _tour_key(diff: int) -> tuple[int, ...]:
    bits = [b for b in range(diff.bit_length()) if diff >> b & 1]
    return tuple(sorted(bits, reverse=True))


def fixed_target_synth(S: ParitySet, close: bool = True) -> Circuit:
    """Parity network whose CNOTs all share one target wire.

    The target is the smallest index ``i`` set in every member. Stripping
    ``e_i`` turns the members into hypercube vertices, which are toured
    greedily from the origin: always move to the nearest unvisited vertex,
    preferring the one reached by flipping the highest coordinates. With
    ``close`` the tour returns to the origin, so the circuit is pointed at
    the identity.

    Raises:
        NoCommonTarget: if no coordinate is set in every member.
    """
    n = S.n
    common = (1 << n) - 1
    for v in S.values:
        common &= v
    if not S.values or not common:
        if not S.values:
            return Circuit(n)
        raise NoCommonTarget("no coordinate is shared by every parity")
    i = (common & -common).bit_length() - 1
    ibit = 1 << i
    todo = {v ^ ibit for v in S.values}
    pos = 0
    todo.discard(0)
    flips: list[int] = []
    while todo:
        best = min(todo, key=lambda v: ((v ^ pos).bit_count(), tuple(-b for b in _tour_key(v ^ pos))))
        for b in _tour_key(best ^ pos):
            pos ^= 1 << b
            flips.append(b + 1)
            todo.discard(pos)
    if close:
        flips.extend(b + 1 for b in _tour_key(pos))
    return tour_to_circuit(flips, n, i + 1)
