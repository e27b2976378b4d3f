"""Ready-made quivers: Dynkin orientations and the worked examples from the
unitriangular-matrix family (the 3-cycle, the 6-vertex and the 10-vertex
staircase quivers), the triangle strip, and the Kronecker quiver."""

from __future__ import annotations

from .dynkin import parse_type, valued_edges
from .errors import DomainError
from .quiver import IceQuiver


def dynkin_quiver(name, orientation="linear"):
    """An orientation of the Dynkin diagram `name`.

    orientation="linear" orients every edge from its lower to its higher
    label; orientation="alternating" makes every vertex a source or a sink
    (2-coloring rooted at vertex 0, sources are color +).
    """
    family, rank = parse_type(name)
    edges = valued_edges(family, rank)
    mat = [[0] * rank for _ in range(rank)]
    if orientation == "linear":
        directed = [(i, j, aij, aji) for (i, j, aij, aji) in edges]
    elif orientation == "alternating":
        eps = two_coloring(rank, [(i, j) for i, j, _, _ in edges])
        directed = []
        for i, j, aij, aji in edges:
            if eps[i] == 1:
                directed.append((i, j, aij, aji))
            else:
                directed.append((j, i, aji, aij))
    else:
        raise DomainError(f"unknown orientation {orientation!r}")
    for i, j, aij, aji in directed:
        mat[i][j] = -aij
        mat[j][i] = aji
    return IceQuiver(rank, rank, mat)


def two_coloring(nverts, edges):
    """Proper 2-coloring (+1/-1) of a tree, +1 at the least vertex."""
    adj = [[] for _ in range(nverts)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    eps = [0] * nverts
    for start in range(nverts):
        if eps[start]:
            continue
        eps[start] = 1
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if eps[w] == 0:
                    eps[w] = -eps[v]
                    stack.append(w)
                elif eps[w] == eps[v]:
                    raise DomainError("diagram is not bipartite; no alternating orientation")
    return tuple(eps)


def cyclic_triangle(r=1, s=1, t=1):
    """3-cycle 1 -> 2 -> 3 -> 1 with arrow multiplicities r, s, t."""
    return IceQuiver.from_arrows(3, [(0, 1, r), (1, 2, s), (2, 0, t)])


def paper_cyclic_quiver():
    """The seed-mutation example quiver: arrows 2->1, 1->3, 3->2."""
    return IceQuiver.from_arrows(3, [(1, 0), (0, 2), (2, 1)])


def staircase_quiver(rows):
    """Staircase of 3-cycles on 1 + 2 + ... + rows vertices (the family whose
    3-, 6- and 10-vertex members are the worked enumeration examples).

    Vertices are numbered row by row; each elementary triangle is oriented so
    that the whole quiver is glued from oriented 3-cycles.
    """
    if rows < 2:
        raise DomainError("staircase needs at least 2 rows")
    index = {}
    count = 0
    for r in range(rows):
        for c in range(r + 1):
            index[(r, c)] = count
            count += 1
    arrows = []
    for r in range(1, rows):
        for c in range(r):
            top = index[(r - 1, c)]
            left = index[(r, c)]
            right = index[(r, c + 1)]
            arrows.append((left, top))
            arrows.append((top, right))
            arrows.append((right, left))
    return IceQuiver.from_arrows(count, arrows)


def paper_quiver_2():
    """The 6-vertex quiver glued from four 3-cycles (staircase with 3 rows),
    with the labeling used in the mutation walk to the D6 orientation."""
    return staircase_quiver(3)


def paper_quiver_3():
    """The 10-vertex, 18-arrow quiver whose mutation class has 5739 members
    up to isomorphism (staircase with 4 rows)."""
    return staircase_quiver(4)


def triangle_strip(n):
    """Strip of n-2 triangles: arrows i->i+1 and i+2->i (0-based)."""
    if n < 3:
        raise DomainError("triangle strip needs n >= 3")
    arrows = [(i, i + 1) for i in range(n - 1)] + [(i + 2, i) for i in range(n - 2)]
    return IceQuiver.from_arrows(n, arrows)


def kronecker_quiver(mult=2):
    return IceQuiver.from_arrows(2, [(0, 1, mult)])


def g2_quiver():
    """Valued rank-2 quiver 1 -> 2 with b_12 = 3, b_21 = -1 (symmetrizer (1,3))."""
    return dynkin_quiver("G2")


PRESETS = {
    "A2": lambda: dynkin_quiver("A2"),
    "A3": lambda: dynkin_quiver("A3"),
    "A4": lambda: dynkin_quiver("A4"),
    "D4": lambda: dynkin_quiver("D4"),
    "G2": g2_quiver,
    "cyclic-triangle": paper_cyclic_quiver,
    "staircase-6": paper_quiver_2,
    "staircase-10": paper_quiver_3,
    "kronecker": kronecker_quiver,
}
