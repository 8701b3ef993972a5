"""Pure-Python breadth-first search kernel for minimal parity networks.

States pack the wire matrix and the coverage mask into one integer: row
``i`` of the matrix sits at bit offset ``n * i`` and the mask above the
``n * n`` matrix bits. The compiled kernel uses the same layout and the same
neighbour order, so both return identical circuits.
"""

from __future__ import annotations


def bfs_search(n: int, targets: list[int], goal: int, max_len: int):
    """Shortest CNOT sequence covering ``targets``.

    Args:
        n: wire count.
        targets: packed nonzero parities, all distinct.
        goal: packed final matrix, or -1 for no constraint.
        max_len: largest circuit length to consider.

    Returns:
        A list of 0-based ``(control, target)`` pairs, or None when nothing
        of length at most ``max_len`` exists.
    """
    width = n * n
    rowmask = (1 << n) - 1
    amask = (1 << width) - 1
    full = (1 << len(targets)) - 1
    index = {v: k for k, v in enumerate(targets)}

    start_a = 0
    mask = 0
    for i in range(n):
        start_a |= 1 << (i + n * i)
        k = index.get(1 << i)
        if k is not None:
            mask |= 1 << k
    start = start_a | (mask << width)

    def done(key: int) -> bool:
        return key >> width == full and (goal < 0 or key & amask == goal)

    def path(key: int) -> list[tuple[int, int]]:
        out = []
        while key != start:
            key, move = parent[key]
            out.append(divmod(move, n))
        return out[::-1]

    if done(start):
        return []
    parent: dict[int, tuple[int, int]] = {start: (start, -1)}
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for key in frontier:
            a = key & amask
            m = key >> width
            rows = [(a >> (n * i)) & rowmask for i in range(n)]
            for c in range(n):
                rc = rows[c]
                for t in range(n):
                    if t == c:
                        continue
                    new_row = rows[t] ^ rc
                    k = index.get(new_row)
                    nm = m | (1 << k) if k is not None else m
                    nkey = (a ^ (rc << (n * t))) | (nm << width)
                    if nkey in parent:
                        continue
                    parent[nkey] = (key, c * n + t)
                    if done(nkey):
                        return path(nkey)
                    nxt.append(nkey)
        if not nxt:
            break
        frontier = nxt
    return None
