# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled canonical-labeling kernel.

Same algorithm and results as `_canon_py` (the pure-Python fallback):
equitable color refinement plus individualization with the lexicographically
least flattened matrix over the search leaves.  The benchmark suite
cross-checks the two implementations on random inputs.
"""

from libc.stdlib cimport free, malloc


cdef struct Work:
    int m
    long* mat        # m*m flattened
    int* colors
    int* new_colors
    long* sig_buf    # per-vertex signature scratch: m entries
    int* cell_buf


cdef int _refine(Work* w) except -1:
    """Refine w.colors to the equitable fixpoint (canonical ids)."""
    cdef int m = w.m
    cdef int v, u, i, j, changed, nsig
    cdef long entry
    sigs = []
    while True:
        del sigs[:]
        for v in range(m):
            nsig = 0
            for u in range(m):
                entry = w.mat[v * m + u]
                if entry != 0:
                    # pack (color, entry) into one long for fast sorting;
                    # entries are small arrow multiplicities
                    w.sig_buf[nsig] = (<long> w.colors[u]) * 8192 + entry + 4096
                    nsig += 1
            # insertion sort of the small signature buffer
            for i in range(1, nsig):
                entry = w.sig_buf[i]
                j = i - 1
                while j >= 0 and w.sig_buf[j] > entry:
                    w.sig_buf[j + 1] = w.sig_buf[j]
                    j -= 1
                w.sig_buf[j + 1] = entry
            sig = (w.colors[v],) + tuple([w.sig_buf[i] for i in range(nsig)])
            sigs.append(sig)
        order = {}
        for sig in sorted(set(sigs)):
            order[sig] = len(order)
        changed = 0
        for v in range(m):
            w.new_colors[v] = order[sigs[v]]
        # partitions equal iff the color classes coincide
        same = {}
        for v in range(m):
            key = w.colors[v]
            if key in same:
                if same[key] != w.new_colors[v]:
                    changed = 1
                    break
            else:
                same[key] = w.new_colors[v]
        if not changed:
            rev = {}
            for v in range(m):
                key = w.new_colors[v]
                if key in rev:
                    if rev[key] != w.colors[v]:
                        changed = 1
                        break
                else:
                    rev[key] = w.colors[v]
        for v in range(m):
            w.colors[v] = w.new_colors[v]
        if not changed:
            return 0


cdef tuple _flatten(Work* w, list perm):
    cdef int m = w.m
    cdef int i, j
    cdef list out = [0] * (m * m)
    cdef int pi
    for i in range(m):
        pi = <int> perm[i]
        for j in range(m):
            out[i * m + j] = w.mat[pi * m + (<int> perm[j])]
    return tuple(out)


cdef void _search(Work* w, list best_holder):
    cdef int m = w.m
    cdef int v, c, target_color, size
    if _refine(w) < 0:
        return
    # locate the first non-singleton color class
    target_color = -1
    cdef int counts_len = 0
    for v in range(m):
        if w.colors[v] + 1 > counts_len:
            counts_len = w.colors[v] + 1
    counts = [0] * counts_len
    for v in range(m):
        counts[w.colors[v]] += 1
    for c in range(counts_len):
        if counts[c] > 1:
            target_color = c
            break
    cdef int* saved
    if target_color == -1:
        perm = sorted(range(m), key=lambda x: w.colors[x])
        flat = _flatten(w, perm)
        if best_holder[0] is None or flat < best_holder[0]:
            best_holder[0] = flat
            best_holder[1] = [tuple(perm)]
        elif flat == best_holder[0]:
            best_holder[1].append(tuple(perm))
        return
    saved = <int*> malloc(m * sizeof(int))
    if saved == NULL:
        raise MemoryError()
    for v in range(m):
        saved[v] = w.colors[v]
    try:
        for v in range(m):
            if saved[v] != target_color:
                continue
            for c in range(m):
                w.colors[c] = 2 * saved[c] + 1
            w.colors[v] = 2 * saved[v]
            _search(w, best_holder)
    finally:
        free(saved)


def canonical_all(mat, colors):
    """Canonical flattened matrix and every labeling permutation achieving it."""
    cdef int m = len(mat)
    if m == 0:
        return (), [()]
    cdef Work w
    w.m = m
    w.mat = <long*> malloc(m * m * sizeof(long))
    w.colors = <int*> malloc(m * sizeof(int))
    w.new_colors = <int*> malloc(m * sizeof(int))
    w.sig_buf = <long*> malloc(m * sizeof(long))
    w.cell_buf = NULL
    if w.mat == NULL or w.colors == NULL or w.new_colors == NULL or w.sig_buf == NULL:
        raise MemoryError()
    cdef int i, j
    cdef long entry
    try:
        for i in range(m):
            row = mat[i]
            for j in range(m):
                entry = row[j]  # raises OverflowError beyond C long
                if entry >= 4096 or entry <= -4096:
                    # signature packing needs |entry| < 4096; the caller falls
                    # back to the pure-Python kernel for such matrices
                    raise OverflowError("arrow multiplicity too large for compiled kernel")
                w.mat[i * m + j] = entry
        for i in range(m):
            w.colors[i] = colors[i]
        best_holder = [None, []]
        _search(&w, best_holder)
        return best_holder[0], best_holder[1]
    finally:
        free(w.mat)
        free(w.colors)
        free(w.new_colors)
        free(w.sig_buf)


def canonical_key(mat, colors):
    """Only the canonical flattened matrix (cheaper entry point)."""
    return canonical_all(mat, colors)[0]
