"""Linear algebra over GF(2) on bit-packed rows.

A vector of length ``n`` is an ``int`` whose bit ``i - 1`` holds entry ``i``.
Matrices keep one such ``int`` per row. Row XOR is the only mutation used by
the elimination routines, so every step they record is an elementary row
addition and maps directly onto a CNOT.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .circuit import CNOT, Circuit, Gate
from .errors import ArityMismatch, NonLinearGate, SingularMatrix

__all__ = [
    "BitVec",
    "BitMatrix",
    "row_echelon",
    "invert",
    "generalized_inverse",
    "pmh_synthesize",
    "compose_cnot_transform",
    "parity",
]


def parity(v: int) -> int:
    """Parity of the set bits of ``v``."""
    return v.bit_count() & 1


def _parse_bits(bits) -> tuple[int, int]:
    if isinstance(bits, str):
        s = bits.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {bits!r}")
        return sum(1 << i for i, ch in enumerate(s) if ch == "1"), len(s)
    bits = list(bits)
    value = 0
    for i, b in enumerate(bits):
        if b not in (0, 1, True, False):
            raise ValueError(f"entries must be 0 or 1, got {b!r}")
        if b:
            value |= 1 << i
    return value, len(bits)


class BitVec:
    """Fixed-length vector over GF(2) with 1-based indexing.

    Args:
        bits: a bitstring (position ``i`` is entry ``i``) or a sequence of 0/1.

    Example:
        >>> v = BitVec("011")
        >>> v[2], v.weight
        (1, 2)
    """

    __slots__ = ("value", "n")

    def __init__(self, bits):
        if isinstance(bits, BitVec):
            self.value, self.n = bits.value, bits.n
            return
        self.value, self.n = _parse_bits(bits)
        if self.n < 1:
            raise ValueError("BitVec needs at least one entry")

    @classmethod
    def from_int(cls, value: int, n: int) -> BitVec:
        """Build from a packed integer (bit ``i - 1`` is entry ``i``)."""
        if n < 1 or value < 0 or value >> n:
            raise ValueError(f"value {value} does not fit in {n} bits")
        v = cls.__new__(cls)
        v.value, v.n = value, n
        return v

    @classmethod
    def unit(cls, i: int, n: int) -> BitVec:
        return cls.from_int(1 << (i - 1), n)

    @classmethod
    def zeros(cls, n: int) -> BitVec:
        return cls.from_int(0, n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} outside 1..{self.n}")
        return (self.value >> (i - 1)) & 1

    def __iter__(self):
        return ((self.value >> i) & 1 for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def support(self) -> list[int]:
        """1-based indices of the set entries, ascending."""
        return [i + 1 for i in range(self.n) if (self.value >> i) & 1]

    def is_zero(self) -> bool:
        return self.value == 0

    def __xor__(self, other: BitVec) -> BitVec:
        if self.n != other.n:
            raise ArityMismatch(f"lengths {self.n} and {other.n}")
        return BitVec.from_int(self.value ^ other.value, self.n)

    def dot(self, other: BitVec) -> int:
        """Inner product over GF(2), i.e. the parity ``chi_self(other)``."""
        if self.n != other.n:
            raise ArityMismatch(f"lengths {self.n} and {other.n}")
        return parity(self.value & other.value)

    def concat(self, other: BitVec) -> BitVec:
        """Append ``other`` after this vector."""
        return BitVec.from_int(self.value | (other.value << self.n), self.n + other.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVec):
            return NotImplemented
        return self.n == other.n and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.n, self.value))

    def __lt__(self, other: BitVec) -> bool:
        return (self.n, self.value) < (other.n, other.value)

    def __str__(self) -> str:
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.n))

    def __repr__(self) -> str:
        return f"BitVec('{self}')"


class BitMatrix:
    """An ``m x n`` matrix over GF(2), one packed ``int`` per row.

    Args:
        rows: bitstrings, 0/1 sequences or ``BitVec`` rows. An empty list
            needs ``ncols``.
        ncols: column count, required only when ``rows`` is empty.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable, ncols: int | None = None):
        parsed = [BitVec(r) for r in rows]
        if parsed:
            widths = {r.n for r in parsed}
            if len(widths) != 1:
                raise ArityMismatch("rows have different lengths")
            ncols = parsed[0].n
        elif ncols is None:
            raise ValueError("ncols is required for a matrix with no rows")
        self._rows = tuple(r.value for r in parsed)
        self.nrows = len(self._rows)
        self.ncols = ncols

    @classmethod
    def from_ints(cls, rows: Sequence[int], ncols: int) -> BitMatrix:
        """Build from packed rows without validation beyond width."""
        m = cls.__new__(cls)
        rows = tuple(rows)
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError(f"row {r} does not fit in {ncols} columns")
        m._rows, m.nrows, m.ncols = rows, len(rows), ncols
        return m

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_ints([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> BitMatrix:
        return cls.from_ints([0] * m, n)

    @classmethod
    def elementary(cls, n: int, i: int, j: int) -> BitMatrix:
        """``E_{i,j}``: the identity with row ``i`` added into row ``j``.

        Left multiplication by it is the action of ``CNOT(i -> j)``.
        """
        if i == j:
            raise ValueError("elementary matrix needs distinct indices")
        rows = [1 << k for k in range(n)]
        rows[j - 1] ^= rows[i - 1]
        return cls.from_ints(rows, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[int, ...]:
        """Packed rows."""
        return self._rows

    def row(self, i: int) -> BitVec:
        return BitVec.from_int(self._rows[i - 1], self.ncols)

    def col(self, j: int) -> BitVec:
        bit = 1 << (j - 1)
        return BitVec.from_int(sum(1 << k for k, r in enumerate(self._rows) if r & bit), self.nrows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self._rows[i - 1] >> (j - 1)) & 1

    def transpose(self) -> BitMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self._rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix.from_ints(cols, self.nrows)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, BitVec):
            if other.n != self.ncols:
                raise ArityMismatch(f"{self.shape} matrix times length-{other.n} vector")
            v = other.value
            out = sum(1 << i for i, r in enumerate(self._rows) if parity(r & v))
            return BitVec.from_int(out, self.nrows)
        if isinstance(other, BitMatrix):
            if other.nrows != self.ncols:
                raise ArityMismatch(f"{self.shape} times {other.shape}")
            b = other._rows
            out = []
            for r in self._rows:
                acc = 0
                while r:
                    low = r & -r
                    acc ^= b[low.bit_length() - 1]
                    r ^= low
                out.append(acc)
            return BitMatrix.from_ints(out, other.ncols)
        return NotImplemented

    def apply(self, v: int) -> int:
        """Matrix times a packed column vector, returning a packed vector."""
        return sum(1 << i for i, r in enumerate(self._rows) if parity(r & v))

    def rank(self) -> int:
        return row_echelon(self)[1]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def is_identity(self) -> bool:
        return self.is_square() and all(r == 1 << i for i, r in enumerate(self._rows))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ncols, self._rows))

    def __str__(self) -> str:
        return "\n".join(str(BitVec.from_int(r, self.ncols)) for r in self._rows)

    def __repr__(self) -> str:
        body = ", ".join(f"'{BitVec.from_int(r, self.ncols)}'" for r in self._rows)
        return f"BitMatrix([{body}])"


def _eliminate(rows: list[int], ncols: int, track: list[int] | None, reduced: bool) -> int:
    """Row-reduce ``rows`` in place, mirroring every XOR on ``track``."""

    def add(src: int, dst: int) -> None:
        rows[dst] ^= rows[src]
        if track is not None:
            track[dst] ^= track[src]

    r = 0
    m = len(rows)
    for j in range(ncols):
        bit = 1 << j
        piv = next((i for i in range(r, m) if rows[i] & bit), None)
        if piv is None:
            continue
        if piv != r:
            # swap through three additions so every step stays elementary
            add(piv, r)
            add(r, piv)
            add(piv, r)
        for i in range(m):
            if i != r and rows[i] & bit and (reduced or i > r):
                add(r, i)
        r += 1
        if r == m:
            break
    return r


def row_echelon(M: BitMatrix, reduced: bool = False) -> tuple[BitMatrix, int, BitMatrix]:
    """Row-reduce ``M``.

    The pivot for each column is the lowest-index eligible row. Row swaps are
    carried out as three row additions.

    Args:
        M: any ``m x n`` matrix.
        reduced: also clear entries above each pivot.

    Returns:
        ``(R, rank, P)`` with ``P @ M == R``, ``R`` in row-echelon form and
        ``P`` invertible.
    """
    rows = list(M.rows)
    track = [1 << i for i in range(M.nrows)]
    rank = _eliminate(rows, M.ncols, track, reduced)
    return BitMatrix.from_ints(rows, M.ncols), rank, BitMatrix.from_ints(track, M.nrows)


def invert(A: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix.

    Raises:
        SingularMatrix: if ``A`` is not square or has rank below ``n``.
    """
    if not A.is_square():
        raise SingularMatrix(f"{A.shape} matrix is not square")
    _, rank, P = row_echelon(A, reduced=True)
    if rank < A.nrows:
        raise SingularMatrix(f"rank {rank} < {A.nrows}")
    return P


def _reverse_columns(A: BitMatrix) -> BitMatrix:
    n = A.ncols
    out = []
    for r in A.rows:
        out.append(sum(1 << (n - 1 - j) for j in range(n) if (r >> j) & 1))
    return BitMatrix.from_ints(out, n)


def generalized_inverse(A: BitMatrix) -> BitMatrix:
    """A matrix ``G`` (``n x m``) with ``A @ G @ A == A``.

    Writes ``A = P [I_r 0; 0 0] Q`` with ``P`` from reducing ``A`` and ``Q``
    from reducing the transpose of the result, then returns
    ``Q^-1 [I_r 0; 0 0] P^-1``. Columns are scanned from last to first, which
    makes ``G @ y`` prefer later coordinates when solutions are not unique;
    for an encoder with ancilla rows appended, that favours the ancillas.
    For invertible ``A`` the result is ``A^-1``.
    """
    m, n = A.shape
    Ar = _reverse_columns(A)
    R, r, P1 = row_echelon(Ar, reduced=True)
    R2, r2, P2 = row_echelon(R.transpose())
    assert r2 == r and all(R2.rows[k] == (1 << k if k < r else 0) for k in range(n))
    # D^T P1 keeps the first r rows of P1 and zeros the rest
    dp = BitMatrix.from_ints([P1.rows[k] if k < r else 0 for k in range(n)], m)
    G = P2.transpose() @ dp
    # undo the column reversal, which permutes the rows of the inverse
    return BitMatrix.from_ints(G.rows[::-1], m)


def _lower_pass(rows: list[int], n: int, m: int) -> list[tuple[int, int]]:
    """Clear below the diagonal section by section; returns ``(src, dst)`` pairs (0-based)."""
    ops: list[tuple[int, int]] = []

    def add(src: int, dst: int) -> None:
        rows[dst] ^= rows[src]
        ops.append((src, dst))

    for start in range(0, n, m):
        stop = min(start + m, n)
        mask = ((1 << (stop - start)) - 1) << start
        seen: dict[int, int] = {}
        for i in range(start, n):
            pat = rows[i] & mask
            if not pat:
                continue
            if pat in seen:
                add(seen[pat], i)
            else:
                seen[pat] = i
        for c in range(start, stop):
            bit = 1 << c
            has_diag = bool(rows[c] & bit)
            for i in range(c + 1, n):
                if rows[i] & bit:
                    if not has_diag:
                        add(i, c)
                        has_diag = True
                    add(c, i)
    return ops


def pmh_synthesize(A: BitMatrix, section_size: int | None = None) -> Circuit:
    """CNOT circuit implementing an invertible linear map.

    Uses block-wise Gaussian elimination with duplicate sub-row removal in
    sections of ``section_size`` columns: a lower pass on ``A`` followed by a
    lower pass on the transpose of what remains.

    Args:
        A: square invertible matrix.
        section_size: columns per section; defaults to
            ``max(1, floor(log2(n) / 2))``.

    Returns:
        A circuit ``C`` with ``compose_cnot_transform(C) == A``.

    Raises:
        SingularMatrix: if ``A`` is not invertible.
    """
    n = A.nrows
    if not A.is_invertible():
        raise SingularMatrix("pmh_synthesize needs an invertible matrix")
    m = section_size if section_size else max(1, int(math.log2(n) / 2))
    rows = list(A.rows)
    lower = _lower_pass(rows, n, m)
    upper_rows = list(BitMatrix.from_ints(rows, n).transpose().rows)
    upper = _lower_pass(upper_rows, n, m)
    assert all(r == 1 << i for i, r in enumerate(upper_rows))
    # A = E(lower_1) ... E(lower_k) * E(upper_j)^T ... E(upper_1)^T, read right to left
    gates = [Gate.cnot(dst + 1, src + 1) for src, dst in upper]
    gates += [Gate.cnot(src + 1, dst + 1) for src, dst in reversed(lower)]
    return Circuit(n, gates)


def compose_cnot_transform(C: Circuit, n: int | None = None) -> BitMatrix:
    """Overall linear map of a CNOT circuit.

    Each ``CNOT(c -> t)`` left-multiplies the running matrix by ``E_{c,t}``.

    Raises:
        NonLinearGate: if any gate is not a CNOT.
    """
    n = C.n if n is None else n
    rows = [1 << i for i in range(n)]
    for g in C:
        if g.kind != CNOT:
            raise NonLinearGate(f"{g!r} is not a CNOT")
        c, t = g.wires
        rows[t - 1] ^= rows[c - 1]
    return BitMatrix.from_ints(rows, n)
