# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled breadth-first search kernel for minimal parity networks.

Same state layout and neighbour order as the pure-Python kernel. Keys must
fit in 64 bits, i.e. ``n * n + len(targets) <= 64``.
"""

from libc.stdint cimport uint64_t, int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.utility cimport pair

MAX_KEY_BITS = 64


def bfs_search(int n, list targets, long long goal, int max_len):
    """Shortest CNOT sequence covering ``targets``; see the pure kernel."""
    cdef int width = n * n
    cdef int ntargets = len(targets)
    if width + ntargets > MAX_KEY_BITS or n > 8:
        raise ValueError("instance too large for 64-bit state keys")
    cdef uint64_t rowmask = (1 << n) - 1
    cdef uint64_t amask = ((<uint64_t>1) << width) - 1 if width < 64 else <uint64_t>(-1)
    cdef uint64_t full = ((<uint64_t>1) << ntargets) - 1 if ntargets < 64 else <uint64_t>(-1)
    cdef vector[int] index = vector[int](1 << n, -1)
    cdef int k, i, c, t, depth
    for k in range(ntargets):
        index[<int>targets[k]] = k

    cdef uint64_t start_a = 0, mask = 0
    for i in range(n):
        start_a |= (<uint64_t>1) << (i + n * i)
        if index[1 << i] >= 0:
            mask |= (<uint64_t>1) << index[1 << i]
    cdef uint64_t start = start_a | (mask << width)
    cdef bint pointed = goal >= 0
    cdef uint64_t ugoal = <uint64_t>goal if pointed else 0

    if (start >> width) == full and (not pointed or (start & amask) == ugoal):
        return []

    cdef unordered_map[uint64_t, pair[uint64_t, int]] parent
    parent.reserve(1 << 20)
    parent[start] = pair[uint64_t, int](start, -1)
    cdef vector[uint64_t] frontier, nxt
    frontier.push_back(start)
    cdef uint64_t key, a, m, rc, new_row, nm, nkey, found = 0
    cdef uint64_t rows[8]
    cdef bint hit = False
    cdef size_t f

    for depth in range(max_len):
        nxt.clear()
        for f in range(frontier.size()):
            key = frontier[f]
            a = key & amask
            m = key >> width
            for i in range(n):
                rows[i] = (a >> (n * i)) & rowmask
            for c in range(n):
                rc = rows[c]
                for t in range(n):
                    if t == c:
                        continue
                    new_row = rows[t] ^ rc
                    k = index[new_row]
                    nm = m | ((<uint64_t>1) << k) if k >= 0 else m
                    nkey = (a ^ (rc << (n * t))) | (nm << width)
                    if parent.count(nkey):
                        continue
                    parent[nkey] = pair[uint64_t, int](key, c * n + t)
                    if (nkey >> width) == full and (not pointed or (nkey & amask) == ugoal):
                        found = nkey
                        hit = True
                        break
                    nxt.push_back(nkey)
                if hit:
                    break
            if hit:
                break
        if hit or nxt.size() == 0:
            break
        frontier.swap(nxt)

    if not hit:
        return None
    out = []
    key = found
    while key != start:
        out.append(divmod(parent[key].second, n))
        key = parent[key].first
    out.reverse()
    return out
