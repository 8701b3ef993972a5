"""Exact minimal parity networks, the heuristic-gap experiment, and
instance mappings between hypercube tours, decoding and parity networks.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernel
from .circuit import CNOT, Circuit, Gate
from .errors import ArityTooLarge, MixedTargets, SearchExhausted
from .f2linear import BitMatrix, BitVec
from .paritynet import ParitySet, gray_synth, tour_to_circuit

__all__ = [
    "SearchState",
    "HtspInstance",
    "MldpInstance",
    "GapRow",
    "min_parity_network",
    "gap_experiment",
    "write_gap_csv",
    "htsp_to_mpnpft",
    "tour_to_circuit",
    "circuit_to_tour",
    "mldp_to_mpnpe",
    "backend",
    "ORACLE_MAX_N",
]

ORACLE_MAX_N = 4
DEFAULT_MAX_LEN = 64


@dataclass(frozen=True)
class SearchState:
    """A search node: current wire matrix and the covered members of ``S``."""

    A: BitMatrix
    covered: frozenset[int]


@dataclass(frozen=True)
class HtspInstance:
    """Visit every vertex of ``S`` in the ``n``-cube with at most ``k`` flips."""

    n: int
    S: tuple[BitVec, ...]
    k: int


@dataclass(frozen=True)
class MldpInstance:
    """Find ``w`` of weight at most ``k`` with ``H w = y``."""

    H: BitMatrix
    y: BitVec
    k: int


@dataclass(frozen=True)
class GapRow:
    size: int
    mean_graysynth: float
    mean_optimal: float
    ratio: float
    samples: int


def backend() -> str:
    """Name of the active search kernel, ``"compiled"`` or ``"python"``."""
    return _kernel.BACKEND


def _pack(A: BitMatrix) -> int:
    n = A.nrows
    return sum(r << (n * i) for i, r in enumerate(A.rows))


def min_parity_network(
    S: ParitySet,
    pointed: BitMatrix | None = None,
    max_len: int = DEFAULT_MAX_LEN,
    allow_large: bool = False,
    kernel=None,
) -> tuple[int, Circuit]:
    """Shortest CNOT parity network for ``S`` by breadth-first search.

    States are ``(A, covered)`` pairs; neighbours are tried in ascending
    ``(control, target)`` order, so the result is deterministic.

    Args:
        S: parities to cover.
        pointed: required final linear map, or None for any.
        max_len: length cap.
        allow_large: permit ``n`` above 4 (memory grows quickly).
        kernel: override the search kernel, for benchmarking.

    Returns:
        ``(length, circuit)``.

    Raises:
        SearchExhausted: nothing within ``max_len``.
        ArityTooLarge: ``n > 4`` without ``allow_large``.
    """
    n = S.n
    if n > ORACLE_MAX_N and not allow_large:
        raise ArityTooLarge(f"exact search is limited to n <= {ORACLE_MAX_N}")
    goal = -1
    if pointed is not None:
        if pointed.shape != (n, n) or not pointed.is_invertible():
            raise ValueError("pointed target must be an invertible n x n matrix")
        goal = _pack(pointed)
    search = kernel or _kernel.bfs_search
    moves = search(n, S.values, goal, max_len)
    if moves is None:
        raise SearchExhausted(f"no parity network within {max_len} CNOTs")
    C = Circuit(n, [Gate.cnot(c + 1, t + 1) for c, t in moves])
    return len(moves), C


def _nonzero(n: int) -> list[int]:
    return list(range(1, 1 << n))


def _subsets(n: int, size: int, samples: int, seed: int) -> list[tuple[int, ...]]:
    pool = _nonzero(n)
    total = math.comb(len(pool), size)
    if total <= samples:
        return list(itertools.combinations(pool, size))
    rng = random.Random(f"{seed}:{n}:{size}")
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    while len(out) < samples:
        pick = tuple(sorted(rng.sample(pool, size)))
        if pick not in seen:
            seen.add(pick)
            out.append(pick)
    return out


def _gap_instance(args: tuple[int, tuple[int, ...]]) -> tuple[int, int]:
    n, members = args
    S = ParitySet(n, members)
    heuristic = gray_synth(S)[0].cnot_count()
    optimal, _ = min_parity_network(S)
    return heuristic, optimal


def gap_experiment(
    n: int,
    sizes: Sequence[int] | None = None,
    samples: int = 200,
    seed: int = 0,
    jobs: int = 1,
) -> list[GapRow]:
    """Compare ``gray_synth`` against the exact minimum on random sets.

    For each size, all subsets of the nonzero parities are used when there
    are at most ``samples`` of them; otherwise ``samples`` distinct subsets
    are drawn from a generator seeded by ``(seed, n, size)``. The ratio is
    mean heuristic count over mean optimal count (1.0 when both are 0).

    Args:
        n: variable count, at most 4.
        sizes: set sizes; defaults to every size from 1 to ``2^n - 1``.
        samples: instances per size.
        seed: sampling seed.
        jobs: worker processes; results do not depend on it.
    """
    if n > ORACLE_MAX_N:
        raise ArityTooLarge(f"exact search is limited to n <= {ORACLE_MAX_N}")
    sizes = list(sizes) if sizes is not None else list(range(1, 1 << n))
    work: list[tuple[int, tuple[int, ...]]] = []
    spans = []
    for size in sizes:
        subs = _subsets(n, size, samples, seed)
        spans.append((size, len(work), len(subs)))
        work.extend((n, s) for s in subs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_gap_instance, work, chunksize=4))
    else:
        results = [_gap_instance(w) for w in work]
    rows = []
    for size, start, count in spans:
        chunk = results[start : start + count]
        mh = sum(h for h, _ in chunk) / count
        mo = sum(o for _, o in chunk) / count
        ratio = 1.0 if mh == mo == 0 else mh / mo
        rows.append(GapRow(size, mh, mo, ratio, count))
    return rows


def write_gap_csv(rows: Iterable[GapRow]) -> str:
    """Render rows as CSV with header ``size,mean_graysynth,mean_optimal,ratio,samples``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "mean_graysynth", "mean_optimal", "ratio", "samples"])
    for r in rows:
        w.writerow([r.size, f"{r.mean_graysynth:.6f}", f"{r.mean_optimal:.6f}", f"{r.ratio:.6f}", r.samples])
    return buf.getvalue()


def htsp_to_mpnpft(inst: HtspInstance) -> tuple[ParitySet, int]:
    """Pad every vertex with a trailing 1: a tour of the original set maps to
    a fixed-target network on ``n + 1`` wires with the same length."""
    one = BitVec("1")
    return ParitySet(inst.n + 1, [BitVec(v).concat(one) for v in inst.S]), inst.k


def circuit_to_tour(C: Circuit) -> list[int]:
    """Flip sequence of a fixed-target CNOT circuit (its control list).

    Raises:
        MixedTargets: if the CNOTs do not share one target, or a gate is not a CNOT.
    """
    targets = set()
    flips = []
    for g in C:
        if g.kind != CNOT:
            raise MixedTargets(f"{g!r} is not a CNOT")
        flips.append(g.wires[0])
        targets.add(g.wires[1])
    if len(targets) > 1:
        raise MixedTargets(f"targets {sorted(targets)}")
    return flips


def mldp_to_mpnpe(inst: MldpInstance) -> tuple[ParitySet, BitMatrix, int]:
    """Decoding instance as an encoded parity-network instance.

    With encoder ``E = H^T`` the wire parity ``w`` computes ``H w``, so a
    weight-``k`` solution is a parity reachable with ``k - 1`` CNOTs.
    """
    if inst.k < 1:
        raise ValueError("k must be at least 1")
    E = inst.H.transpose()
    return ParitySet(inst.y.n, [inst.y]), E, inst.k - 1
