"""Pure-Python canonical labeling of small signed integer matrices.

This is the fallback for the compiled kernel in `_canon_cy`; both expose the
same two functions and must stay behaviourally identical (the benchmark suite
cross-checks them).

A quiver on m vertices is given as a full m x m antisymmetric matrix of
signed arrow multiplicities plus an initial color per vertex.  Only
permutations preserving the initial coloring are considered.  The canonical
form is the lexicographically least flattened matrix over the leaves of an
individualization-refinement search tree, which is deterministic and
isomorphism-invariant.
"""

from __future__ import annotations


def _refine(mat, m, colors):
    """Equitable color refinement; returns a stable coloring (canonical ids)."""
    while True:
        sigs = []
        for v in range(m):
            row = mat[v]
            nb = sorted((colors[w], row[w]) for w in range(m) if row[w])
            sigs.append((colors[v], tuple(nb)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if _partition_of(new, m) == _partition_of(colors, m):
            return new
        colors = new


def _partition_of(colors, m):
    cells = {}
    for v in range(m):
        cells.setdefault(colors[v], []).append(v)
    return sorted(tuple(c) for c in cells.values())


def _flatten(mat, perm, m):
    return tuple(mat[perm[i]][perm[j]] for i in range(m) for j in range(m))


def canonical_all(mat, colors):
    """Canonical flattened matrix and every labeling permutation achieving it.

    Returns (key, perms) where key is a tuple of m*m ints and each perm maps
    new position -> old vertex.
    """
    m = len(mat)
    if m == 0:
        return (), [()]
    best = None
    best_perms = []

    def rec(colors):
        nonlocal best, best_perms
        colors = _refine(mat, m, colors)
        cells = {}
        for v in range(m):
            cells.setdefault(colors[v], []).append(v)
        target = None
        for color in sorted(cells):
            if len(cells[color]) > 1:
                target = cells[color]
                break
        if target is None:
            perm = tuple(sorted(range(m), key=lambda v: colors[v]))
            flat = _flatten(mat, perm, m)
            if best is None or flat < best:
                best = flat
                best_perms = [perm]
            elif flat == best:
                best_perms.append(perm)
            return
        for v in target:
            child = [2 * c + 1 for c in colors]
            child[v] = 2 * colors[v]
            rec(child)

    rec(list(colors))
    return best, best_perms


def canonical_key(mat, colors):
    """Only the canonical flattened matrix (cheaper entry point)."""
    return canonical_all(mat, colors)[0]
