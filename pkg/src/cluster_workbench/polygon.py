"""Triangulations of a convex polygon, flips, and the associated ice quivers.

A triangulation of the (n+3)-gon has n diagonals (the mutable vertices) and
n+3 sides (the frozen vertices).  The quiver is the plane-oriented dual of
the triangulation: inside every triangle with corners a < b < c the edges are
cyclically ordered (a,b) -> (a,c) -> (b,c) -> (a,b), and arrows between two
sides are dropped.
"""

from __future__ import annotations

from .errors import DomainError
from .quiver import IceQuiver


def _norm_edge(a, b):
    return (a, b) if a < b else (b, a)


def polygon_sides(nverts):
    return [_norm_edge(i, (i + 1) % nverts) for i in range(nverts)]


def is_diagonal(edge, nverts):
    a, b = edge
    return 0 <= a < b < nverts and b - a not in (1, nverts - 1)


def diagonals_cross(d1, d2):
    a, b = d1
    c, d = d2
    return (a < c < b < d) or (c < a < d < b)


def validate_triangulation(nverts, diagonals):
    diags = [_norm_edge(*d) for d in diagonals]
    if len(set(diags)) != len(diags):
        raise DomainError("repeated diagonal")
    for d in diags:
        if not is_diagonal(d, nverts):
            raise DomainError(f"{d} is not a diagonal of the {nverts}-gon")
    for i in range(len(diags)):
        for j in range(i + 1, len(diags)):
            if diagonals_cross(diags[i], diags[j]):
                raise DomainError(f"diagonals {diags[i]} and {diags[j]} cross")
    if len(diags) != nverts - 3:
        raise DomainError(
            f"a triangulation of the {nverts}-gon has {nverts - 3} diagonals, got {len(diags)}"
        )
    return diags


def triangles_of(nverts, diagonals):
    """The n+1 triangles, as sorted vertex triples.  In a maximal non-crossing
    set any 3 pairwise-joined vertices bound a face (no K4 in outerplanar graphs)."""
    edges = set(polygon_sides(nverts)) | set(diagonals)
    verts = range(nverts)
    out = []
    for a in verts:
        for b in range(a + 1, nverts):
            if (a, b) not in edges:
                continue
            for c in range(b + 1, nverts):
                if (a, c) in edges and (b, c) in edges:
                    out.append((a, b, c))
    return out


def all_triangulations(nverts):
    """Every triangulation of the convex nverts-gon (as tuples of diagonals)."""

    def rec(vertices):
        # triangulations of the polygon spanned by `vertices` (cyclic order)
        if len(vertices) < 3:
            return [frozenset()]
        if len(vertices) == 3:
            return [frozenset()]
        first, last = vertices[0], vertices[-1]
        out = []
        for idx in range(1, len(vertices) - 1):
            apex = vertices[idx]
            left = rec(vertices[: idx + 1])
            right = rec(vertices[idx:])
            extra = []
            for edge in (_norm_edge(first, apex), _norm_edge(apex, last)):
                if is_diagonal(edge, nverts):
                    extra.append(edge)
            for l in left:
                for r in right:
                    out.append(l | r | frozenset(extra))
        return out

    tris = {t for t in rec(list(range(nverts)))}
    return sorted(tuple(sorted(t)) for t in tris)


def flip(nverts, diagonals, diag):
    """Replace `diag` by the other diagonal of the quadrilateral formed by
    the two triangles adjacent to it."""
    diag = _norm_edge(*diag)
    diags = validate_triangulation(nverts, diagonals)
    if diag not in diags:
        raise DomainError(f"{diag} is not in the triangulation")
    adjacent = [t for t in triangles_of(nverts, diags) if diag[0] in t and diag[1] in t]
    if len(adjacent) != 2:
        raise DomainError("diagonal is not adjacent to exactly two triangles")
    quad = sorted(set(adjacent[0]) | set(adjacent[1]))
    other = [v for v in quad if v not in diag]
    new_diag = _norm_edge(*other)
    return tuple(sorted(d for d in diags if d != diag)) + (new_diag,)


def polygon_triangulation_quiver(n, diagonals):
    """Ice quiver of a triangulation of the (n+3)-gon: n mutable vertices
    (the diagonals, in the given order) and n+3 frozen vertices (the sides)."""
    nverts = n + 3
    diags = validate_triangulation(nverts, [_norm_edge(*d) for d in diagonals])
    ordered_diags = [_norm_edge(*d) for d in diagonals]
    sides = polygon_sides(nverts)
    index = {d: i for i, d in enumerate(ordered_diags)}
    for i, s in enumerate(sorted(sides)):
        index[s] = n + i
    arrows = []
    for a, b, c in triangles_of(nverts, diags):
        cycle = [(_norm_edge(a, b), _norm_edge(a, c)),
                 (_norm_edge(a, c), _norm_edge(b, c)),
                 (_norm_edge(b, c), _norm_edge(a, b))]
        for src, dst in cycle:
            si, di = index[src], index[dst]
            if si >= n and di >= n:
                continue
            arrows.append((si, di))
    names = [None] * (n + nverts)
    for edge, i in index.items():
        names[i] = f"{edge[0]}{edge[1]}"
    return IceQuiver.from_arrows(n, arrows, m=n + nverts, names=names)


def fan_triangulation(n, apex=0):
    """The fan at `apex` of the (n+3)-gon."""
    nverts = n + 3
    return tuple(
        _norm_edge(apex, (apex + k) % nverts) for k in range(2, nverts - 1)
    )


def flip_graph(nverts):
    """All triangulations plus flip moves: returns (triangulations, edge set)."""
    tris = all_triangulations(nverts)
    index = {t: i for i, t in enumerate(tris)}
    edges = set()
    for t in tris:
        for d in t:
            other = tuple(sorted(flip(nverts, t, d)))
            edges.add(frozenset((index[t], index[other])))
    return tris, edges
