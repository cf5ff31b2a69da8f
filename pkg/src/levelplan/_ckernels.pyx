# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the brute-force inner loops (see _kernels_py)."""

from libc.stdlib cimport malloc, free


cdef bint _next_perm(int* a, int lo, int hi):
    # lexicographic successor of a[lo:hi]; False when it wraps
    cdef int i = hi - 2, j, t
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = hi - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = hi - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


cdef int _dedup(int* seq, int n, int* out, int* seen, int nv):
    # cyclic run collapse into out; -1 if a value reappears
    cdef int i, c = 0, v
    for i in range(nv):
        seen[i] = 0
    for i in range(n):
        if seq[i] != seq[(i + n - 1) % n]:
            v = seq[i]
            if seen[v]:
                return -1
            seen[v] = 1
            out[c] = v
            c += 1
    if c == 0:
        out[0] = seq[0]
        c = 1
    return c


cdef tuple _canon(int* seq, int n):
    cdef int i, best = 0
    for i in range(1, n):
        if seq[i] < seq[best]:
            best = i
    return tuple([seq[(best + i) % n] for i in range(n)])


def layer_signatures(list lower, list upper):
    cdef int m = len(lower)
    cdef dict out = {}
    if m == 0:
        out[((), ())] = ()
        return out
    cdef int nv = max(max(lower), max(upper)) + 1
    cdef int* order = <int*> malloc(m * sizeof(int))
    cdef int* lo = <int*> malloc(m * sizeof(int))
    cdef int* up = <int*> malloc(m * sizeof(int))
    cdef int* lbuf = <int*> malloc(m * sizeof(int))
    cdef int* ubuf = <int*> malloc(m * sizeof(int))
    cdef int* seen = <int*> malloc(nv * sizeof(int))
    cdef int* low = <int*> malloc(m * sizeof(int))
    cdef int* upp = <int*> malloc(m * sizeof(int))
    cdef int i, nl, nu
    try:
        for i in range(m):
            order[i] = i
            low[i] = lower[i]
            upp[i] = upper[i]
        while True:
            for i in range(m):
                lo[i] = low[order[i]]
                up[i] = upp[order[i]]
            nl = _dedup(lo, m, lbuf, seen, nv)
            if nl >= 0:
                nu = _dedup(up, m, ubuf, seen, nv)
                if nu >= 0:
                    key = (_canon(lbuf, nl), _canon(ubuf, nu))
                    if key not in out:
                        out[key] = tuple([order[i] for i in range(m)])
            if not _next_perm(order, 1, m):
                break
    finally:
        free(order); free(lo); free(up); free(lbuf); free(ubuf)
        free(seen); free(low); free(upp)
    return out


def crossing_free(list pos, list us, list vs, list gids):
    cdef int n = len(us), i, j
    cdef long pu, pv, g
    cdef int* cu = <int*> malloc(n * sizeof(int))
    cdef int* cv = <int*> malloc(n * sizeof(int))
    cdef int* cg = <int*> malloc(n * sizeof(int))
    try:
        for i in range(n):
            cu[i] = pos[us[i]]
            cv[i] = pos[vs[i]]
            cg[i] = gids[i]
        for i in range(n):
            pu = cu[i]; pv = cv[i]; g = cg[i]
            for j in range(i + 1, n):
                if cg[j] != g:
                    continue
                if (pu - cu[j]) * (pv - cv[j]) < 0:
                    return False
        return True
    finally:
        free(cu); free(cv); free(cg)
