"""Pure-Python versions of the brute-force inner loops.

Must agree exactly with ``_ckernels.pyx``; the test suite runs both.
"""

from __future__ import annotations

from itertools import permutations


def _canonical(seq: list[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:] + seq[:i])


def _cyclic_dedup(seq: list[int]) -> list[int] | None:
    """Collapse cyclic runs; None if some value occurs in two separate runs."""
    n = len(seq)
    out = [seq[i] for i in range(n) if seq[i] != seq[i - 1]]
    if not out:
        return [seq[0]]
    if len(set(out)) != len(out):
        return None
    return out


def layer_signatures(lower: list[int], upper: list[int]) -> dict:
    """Map (induced lower order, induced upper order) -> first edge order realising it.

    Edge ``i`` joins lower vertex ``lower[i]`` to upper vertex ``upper[i]``.
    Circular edge orders are enumerated with edge 0 first, permutations of
    the rest in lexicographic order; only vertex-consecutive ones count.
    """
    m = len(lower)
    out: dict = {}
    if m == 0:
        out[((), ())] = ()
        return out
    for perm in permutations(range(1, m)):
        order = (0, *perm)
        lo = _cyclic_dedup([lower[e] for e in order])
        if lo is None:
            continue
        up = _cyclic_dedup([upper[e] for e in order])
        if up is None:
            continue
        key = (_canonical(lo), _canonical(up))
        if key not in out:
            out[key] = order
    return out


def crossing_free(pos: list[int], us: list[int], vs: list[int], gids: list[int]) -> bool:
    """No two same-graph edges with distinct endpoints are drawn in opposite order."""
    n = len(us)
    for i in range(n):
        pu, pv, g = pos[us[i]], pos[vs[i]], gids[i]
        for j in range(i + 1, n):
            if gids[j] != g:
                continue
            if (pu - pos[us[j]]) * (pv - pos[vs[j]]) < 0:
                return False
    return True
