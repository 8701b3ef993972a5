"""Clifford+T optimization by phase folding and parity-network resynthesis.

The circuit is tracked symbolically: every wire holds a parity of variables
(the inputs plus one fresh variable per Hadamard) and an affine bit. RZ gates
become pending phase terms keyed by parity. At each Hadamard only the terms
that would lose their parity are emitted, through a parity network that also
moves the wires to their exact symbolic states; every other term waits and
keeps merging with later rotations on the same parity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .angles import Angle
from .circuit import CCZ, CNOT, H, MCX, NOT, RZ, TOFFOLI, Circuit, Gate
from .errors import UnsupportedGate
from .f2linear import BitMatrix, BitVec, parity
from .paritynet import ParitySet, PreimageSolver, place_rotations, synth_pointed

__all__ = [
    "CircuitStats",
    "OptimizerState",
    "decompose_toffoli",
    "decompose_mcx",
    "optimize",
    "stats",
    "mcx_circuit",
    "TEMPLATES",
]

# CCZ on wires (1, 2, 3): seven CNOTs, identity overall, T-depth 3
_CCZ_TDEPTH3 = [(1, 2), (3, 1), (2, 1), (2, 3), (3, 1), (2, 3), (1, 2)]
# the six-CNOT network with 3/8 on the pair parities
_CCZ_CNOT6 = [(3, 1), (2, 3), (2, 1), (2, 3), (3, 1), (2, 1)]


def _ccz_terms(pair_angle: Angle) -> dict[int, Angle]:
    terms = {}
    for y in range(1, 8):
        w = y.bit_count()
        terms[y] = pair_angle if w == 2 else Angle(1, 8)
    return terms


def _build_template(skeleton, pair_angle: Angle) -> list[Gate]:
    C = Circuit(3, [Gate.cnot(c, t) for c, t in skeleton])
    return place_rotations(C, _ccz_terms(pair_angle)).gates


TEMPLATES = {
    "tdepth3": _build_template(_CCZ_TDEPTH3, Angle(7, 8)),
    "cnot6": _build_template(_CCZ_CNOT6, Angle(3, 8)),
}


def _remap(gates: Iterable[Gate], wires: tuple[int, int, int]) -> list[Gate]:
    out = []
    for g in gates:
        mapped = tuple(wires[w - 1] for w in g.wires)
        out.append(Gate(g.kind, mapped, g.angle))
    return out


def decompose_toffoli(C: Circuit, template: str = "tdepth3") -> Circuit:
    """Replace every Toffoli and CCZ with Clifford+T gates.

    A Toffoli becomes ``H(t) CCZ H(t)``; the CCZ is a phase network with
    +1/8 on the single and triple parities and -1/8 on the pairs.

    Args:
        C: circuit, possibly with Toffoli and CCZ gates.
        template: ``"tdepth3"`` for seven CNOTs at T-depth 3 or ``"cnot6"`` for
            the six-CNOT network.
    """
    body = TEMPLATES[template]
    out = Circuit(C.n, names=C.names)
    for g in C:
        if g.kind == TOFFOLI:
            c1, c2, t = g.wires
            out.append(Gate.h(t))
            out.extend(_remap(body, (c1, c2, t)))
            out.append(Gate.h(t))
        elif g.kind == CCZ:
            out.extend(_remap(body, g.wires))
        else:
            out.append(g)
    return out


def _fresh_names(names: tuple[str, ...], count: int) -> tuple[str, ...]:
    taken = set(names)
    extra = []
    i = 1
    while len(extra) < count:
        cand = f"anc{i}"
        if cand not in taken:
            extra.append(cand)
            taken.add(cand)
        i += 1
    return names + tuple(extra)


def decompose_mcx(C: Circuit) -> Circuit:
    """Expand multi-controlled X gates into Toffolis.

    A ``k``-controlled X uses ``k - 2`` ancilla wires appended after the
    existing ones and shared between gates: a chain of ``k - 2`` Toffolis
    computes the partial conjunctions, one Toffoli hits the target and the
    chain is undone, ``2k - 3`` Toffolis in all. Ancillas are returned to
    their initial value. One and two controls give a CNOT and a Toffoli.
    """
    need = max((len(g.controls) - 2 for g in C if g.kind == MCX), default=0)
    n = C.n + max(need, 0)
    names = _fresh_names(C.wire_names(), n - C.n) if C.names is not None or n > C.n else None
    out = Circuit(n, names=names)
    for g in C:
        if g.kind != MCX:
            out.append(g)
            continue
        ctrls, t = g.controls, g.target
        k = len(ctrls)
        if k == 1:
            out.append(Gate.cnot(ctrls[0], t))
            continue
        if k == 2:
            out.append(Gate.toffoli(ctrls[0], ctrls[1], t))
            continue
        anc = [C.n + i + 1 for i in range(k - 2)]
        chain = [Gate.toffoli(ctrls[0], ctrls[1], anc[0])]
        for i in range(1, k - 2):
            chain.append(Gate.toffoli(ctrls[i + 1], anc[i - 1], anc[i]))
        out.extend(chain)
        out.append(Gate.toffoli(ctrls[-1], anc[-1], t))
        out.extend(reversed(chain))
    return out


def mcx_circuit(k: int) -> Circuit:
    """A single ``k``-controlled X with controls ``c1..ck`` and target ``t``."""
    names = tuple(f"c{i}" for i in range(1, k + 1)) + ("t",)
    return Circuit(k + 1, [Gate.mcx(range(1, k + 1), k + 1)], names)


@dataclass
class OptimizerState:
    """Symbolic state of the optimizer.

    Attributes:
        V: number of variables so far.
        W: per wire, the parity over variables it holds (packed int).
        b: per wire, the affine bit (the wire holds ``W[i] . v xor b[i]``).
        pending: phase terms not yet emitted, keyed by parity over variables.
        checkpoint: wire parities at the last synthesis point.
        d: affine bits actually present on the wires of the emitted circuit.
        emitted: output circuit.
    """

    V: int
    W: list[int]
    b: list[int]
    pending: dict[int, Angle]
    checkpoint: list[int]
    d: list[int]
    emitted: Circuit = field(repr=False)


def _reduce(basis: dict[int, int], v: int) -> int:
    while v:
        top = v.bit_length() - 1
        row = basis.get(top)
        if row is None:
            return v
        v ^= row
    return 0


def _span_basis(vectors: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for v in vectors:
        r = _reduce(basis, v)
        if r:
            basis[r.bit_length() - 1] = r
    return basis


def _segment(st: OptimizerState, terms: dict[int, Angle]) -> None:
    """Emit a parity network taking the checkpoint states to ``W``."""
    n = len(st.W)
    E = BitMatrix.from_ints(st.checkpoint, st.V)
    solve = PreimageSolver(E)
    L = BitMatrix.from_ints([solve(BitVec.from_int(w, st.V)).value for w in st.W], n)
    if not terms and L.is_identity():
        return
    by_wire: dict[int, Angle] = {}
    dvec = sum(1 << i for i, bit in enumerate(st.d) if bit)
    for p, a in terms.items():
        w = solve(BitVec.from_int(p, st.V)).value
        # the emitted wire parity is p xor (w . d); an offset of 1 flips the sign
        by_wire[w] = -a if parity(w & dvec) else a
    net = synth_pointed(ParitySet(n, by_wire), L)
    st.emitted.extend(place_rotations(net, by_wire).gates)
    new_d = L.apply(dvec)
    st.d = [(new_d >> i) & 1 for i in range(n)]
    st.checkpoint = list(st.W)


def _check_span(st: OptimizerState) -> None:
    basis = _span_basis(st.W)
    assert all(_reduce(basis, p) == 0 for p in st.pending), "pending term left the wire span"


def optimize(C: Circuit, check: bool = False) -> Circuit:
    """Resynthesize the CNOT+RZ regions of a Clifford+T circuit.

    Args:
        C: circuit over CNOT, NOT, H and RZ; decompose Toffoli and MCX gates
            first.
        check: assert the pending-term span invariant after every gate.

    Returns:
        An equivalent circuit up to global phase. Rotations on a common parity
        are merged across Hadamards whenever the parity survives them.

    Raises:
        UnsupportedGate: for Toffoli, MCX or CCZ gates.
    """
    n = C.n
    st = OptimizerState(
        V=n,
        W=[1 << i for i in range(n)],
        b=[0] * n,
        pending={},
        checkpoint=[1 << i for i in range(n)],
        d=[0] * n,
        emitted=Circuit(n, names=C.names),
    )
    for g in C:
        k = g.kind
        if k == CNOT:
            c, t = g.wires[0] - 1, g.wires[1] - 1
            st.W[t] ^= st.W[c]
            st.b[t] ^= st.b[c]
        elif k == NOT:
            st.b[g.wires[0] - 1] ^= 1
        elif k == RZ:
            q = g.wires[0] - 1
            a = -g.angle if st.b[q] else g.angle
            total = st.pending.get(st.W[q], Angle(0)) + a
            if total:
                st.pending[st.W[q]] = total
            else:
                st.pending.pop(st.W[q], None)
        elif k == H:
            q = g.wires[0] - 1
            others = _span_basis(w for i, w in enumerate(st.W) if i != q)
            forced = {p: a for p, a in st.pending.items() if _reduce(others, p)}
            for p in forced:
                del st.pending[p]
            _segment(st, forced)
            if st.d[q] != st.b[q]:
                st.emitted.append(Gate.x(q + 1))
            st.emitted.append(Gate.h(q + 1))
            st.W[q] = 1 << st.V
            st.V += 1
            st.b[q] = 0
            st.d[q] = 0
            st.checkpoint = list(st.W)
        else:
            raise UnsupportedGate(f"{g!r}: decompose Toffoli and MCX gates first")
        if check:
            _check_span(st)
    final = dict(st.pending)
    st.pending.clear()
    _segment(st, final)
    for i in range(n):
        if st.d[i] != st.b[i]:
            st.emitted.append(Gate.x(i + 1))
    return st.emitted


@dataclass(frozen=True)
class CircuitStats:
    cnot_count: int
    t_count: int
    t_depth: int
    h_count: int
    rz_count: int
    total: int

    def line(self) -> str:
        return f"cnot={self.cnot_count} t={self.t_count} tdepth={self.t_depth} h={self.h_count} total={self.total}"


def stats(C: Circuit) -> CircuitStats:
    """Gate counts and T-depth.

    T-type gates are RZ rotations by odd multiples of 1/8. T-depth is found
    by greedy layering: each wire records the number of T layers in its past,
    multi-wire gates synchronize their wires, and a T-type rotation starts
    one layer later than its wire.
    """
    depth = [0] * C.n
    t_count = 0
    for g in C:
        if g.kind == RZ:
            if g.angle.is_t_type():
                t_count += 1
                depth[g.wires[0] - 1] += 1
        elif len(g.wires) > 1:
            m = max(depth[w - 1] for w in g.wires)
            for w in g.wires:
                depth[w - 1] = m
    return CircuitStats(
        cnot_count=C.count(CNOT),
        t_count=t_count,
        t_depth=max(depth, default=0),
        h_count=C.count(H),
        rz_count=C.count(RZ),
        total=len(C),
    )
