"""Text formats for circuits, parity sets, phase polynomials and matrices.

Circuits (``.qc``)::

    .v a b c
    BEGIN
    H c
    tof a b c
    T* b
    END

Gate lines: ``H a``, ``X a``, ``T a``, ``T* a``, ``S a``, ``S* a``, ``Z a``,
``Rz n/d a``, ``tof a`` (NOT), ``tof a b`` (CNOT), ``tof a b c`` (Toffoli),
``tof a1 .. ak t`` (multi-controlled X) and ``Z a b c`` (CCZ). ``#`` starts a
comment; an optional ``.i`` line after ``.v`` is accepted and ignored.
Writing uses the shortest mnemonic for each rotation, ``X`` for NOT
and ``tof`` for controlled gates.

Parity sets: a header ``n <arity>`` then one bitstring per line, entry ``i``
at position ``i``. Phase polynomials: the same header, then lines
``<num>/<den> <bitstring>``. Matrices: one bitstring per row, or the single
word ``identity`` followed by the size.
"""

from __future__ import annotations

from fractions import Fraction

from .angles import Angle
from .circuit import CCZ, CNOT, H, MCX, NOT, RZ, TOFFOLI, Circuit, Gate
from .errors import DuplicateParity, ParseError, UndeclaredWire, ZeroParity
from .f2linear import BitMatrix, BitVec
from .paritynet import ParitySet
from .phasepoly import PhasePolynomial

__all__ = [
    "parse_qc",
    "write_qc",
    "parse_parity_set",
    "write_parity_set",
    "parse_phase_poly",
    "write_phase_poly",
    "parse_matrix",
    "write_matrix",
]

_NAMED = {"T": Angle(1, 8), "T*": Angle(7, 8), "S": Angle(1, 4), "S*": Angle(3, 4), "Z": Angle(1, 2)}
_MNEMONIC = {a: k for k, a in _NAMED.items()}


def _lines(text: str):
    for no, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _fraction(tok: str, no: int) -> Fraction:
    try:
        num, den = tok.split("/")
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", no) from None


def parse_qc(text: str) -> Circuit:
    """Parse the ``.qc`` circuit format.

    Raises:
        ParseError: malformed input, with the line number.
        UndeclaredWire: a gate names a wire missing from ``.v``.
    """
    names: list[str] | None = None
    index: dict[str, int] = {}
    gates: list[Gate] = []
    state = "header"
    for no, line in _lines(text):
        toks = line.split()
        head = toks[0]
        if state == "header":
            if head == ".v":
                if names is not None:
                    raise ParseError("duplicate .v line", no)
                names = toks[1:]
                if not names:
                    raise ParseError(".v declares no wires", no)
                if len(set(names)) != len(names):
                    raise ParseError("wire names must be unique", no)
                index = {nm: i + 1 for i, nm in enumerate(names)}
            elif head in (".i", ".o", ".c", ".ol"):
                if names is None:
                    raise ParseError(f"{head} before .v", no)
                for tok in toks[1:]:
                    if tok not in index:
                        raise UndeclaredWire(f"wire {tok!r} is not declared", no)
            elif head == "BEGIN":
                if names is None:
                    raise ParseError("BEGIN before .v", no)
                state = "body"
            else:
                raise ParseError(f"unexpected {head!r} in header", no)
            continue
        if state == "done":
            raise ParseError("text after END", no)
        if head == "END":
            state = "done"
            continue

        def wire(tok: str) -> int:
            if tok not in index:
                raise UndeclaredWire(f"wire {tok!r} is not declared", no)
            return index[tok]

        args = toks[1:]
        try:
            if head == "tof":
                ws = [wire(t) for t in args]
                if not ws:
                    raise ParseError("tof needs at least one wire", no)
                if len(ws) == 1:
                    gates.append(Gate.x(ws[0]))
                elif len(ws) == 2:
                    gates.append(Gate.cnot(*ws))
                elif len(ws) == 3:
                    gates.append(Gate.toffoli(*ws))
                else:
                    gates.append(Gate.mcx(ws[:-1], ws[-1]))
            elif head in ("H", "X") and len(args) == 1:
                w = wire(args[0])
                gates.append(Gate.h(w) if head == "H" else Gate.x(w))
            elif head == "Z" and len(args) == 3:
                gates.append(Gate.ccz(*(wire(t) for t in args)))
            elif head in _NAMED and len(args) == 1:
                gates.append(Gate.rz(_NAMED[head], wire(args[0])))
            elif head == "Rz" and len(args) == 2:
                gates.append(Gate.rz(_fraction(args[0], no), wire(args[1])))
            else:
                raise ParseError(f"cannot parse gate line {line!r}", no)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), no) from None
    if names is None:
        raise ParseError("missing .v header")
    if state != "done":
        raise ParseError("missing END" if state == "body" else "missing BEGIN")
    return Circuit(len(names), gates, tuple(names))


def _gate_line(g: Gate, names: tuple[str, ...]) -> str:
    ws = [names[w - 1] for w in g.wires]
    if g.kind == RZ:
        m = _MNEMONIC.get(g.angle)
        return f"{m} {ws[0]}" if m else f"Rz {g.angle} {ws[0]}"
    if g.kind == H:
        return f"H {ws[0]}"
    if g.kind == NOT:
        return f"X {ws[0]}"
    if g.kind == CCZ:
        return "Z " + " ".join(ws)
    if g.kind in (CNOT, TOFFOLI, MCX):
        return "tof " + " ".join(ws)
    raise ValueError(f"cannot write {g!r}")


def write_qc(C: Circuit) -> str:
    """Serialize a circuit; wires without names are called ``x1 .. xn``."""
    names = C.wire_names()
    out = [".v " + " ".join(names), "BEGIN"]
    out += [_gate_line(g, names) for g in C]
    out.append("END")
    return "\n".join(out) + "\n"


def _header(lines, kind: str) -> tuple[int, list]:
    lines = list(lines)
    if not lines:
        raise ParseError(f"empty {kind} file")
    no, first = lines[0]
    toks = first.split()
    if len(toks) != 2 or toks[0] != "n" or not toks[1].isdigit() or int(toks[1]) < 1:
        raise ParseError("expected header 'n <arity>'", no)
    return int(toks[1]), lines[1:]


def _bits(tok: str, n: int, no: int) -> int:
    if len(tok) != n or set(tok) - {"0", "1"}:
        raise ParseError(f"expected a bitstring of length {n}, got {tok!r}", no)
    return BitVec(tok).value


def parse_parity_set(text: str) -> ParitySet:
    """Parse a parity-set file.

    Raises:
        ParseError: malformed line.
        DuplicateParity: repeated member.
        ZeroParity: the all-zero string.
    """
    n, body = _header(_lines(text), "parity set")
    S = ParitySet(n)
    for no, line in body:
        toks = line.split()
        if len(toks) != 1:
            raise ParseError("expected one bitstring per line", no)
        v = _bits(toks[0], n, no)
        if v == 0:
            raise ZeroParity("the zero parity is not allowed", no)
        if v in S:
            raise DuplicateParity(f"{toks[0]} appears twice", no)
        S.add(v)
    return S


def write_parity_set(S: ParitySet) -> str:
    return "\n".join([f"n {S.n}"] + [str(v) for v in S.members()]) + "\n"


def parse_phase_poly(text: str) -> PhasePolynomial:
    """Parse a phase-polynomial file; angles are reduced mod 1.

    Raises:
        ParseError: malformed line.
        DuplicateParity: a parity listed twice.
        ZeroParity: the all-zero parity.
    """
    n, body = _header(_lines(text), "phase polynomial")
    f = PhasePolynomial(n)
    seen: set[int] = set()
    for no, line in body:
        toks = line.split()
        if len(toks) != 2:
            raise ParseError("expected '<num>/<den> <bitstring>'", no)
        q = _fraction(toks[0], no)
        y = _bits(toks[1], n, no)
        if y == 0:
            raise ZeroParity("the zero parity is not allowed", no)
        if y in seen:
            raise DuplicateParity(f"{toks[1]} appears twice", no)
        seen.add(y)
        f.add_term(y, q)
    return f


def write_phase_poly(f: PhasePolynomial) -> str:
    return "\n".join([f"n {f.n}"] + [f"{a} {y}" for y, a in f.items()]) + "\n"


def parse_matrix(text: str) -> BitMatrix:
    """Parse a matrix file: bitstring rows, or ``identity <n>``."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty matrix file")
    toks = lines[0][1].split()
    if toks[0] == "identity":
        if len(toks) != 2 or not toks[1].isdigit() or len(lines) > 1:
            raise ParseError("expected 'identity <n>'", lines[0][0])
        return BitMatrix.identity(int(toks[1]))
    width = len(lines[0][1])
    rows = []
    for no, line in lines:
        rows.append(_bits(line, width, no))
    return BitMatrix.from_ints(rows, width)


def write_matrix(A: BitMatrix) -> str:
    return str(A) + "\n"
