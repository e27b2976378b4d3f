"""Dynkin diagram data: Cartan matrices, positive roots, Coxeter numbers.

Positive roots are generated by closing the simple roots under the simple
reflections rather than hard-coded; the generator doubles as a finiteness
test (the closure of a non-Dynkin Cartan matrix blows past the cap).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError

COXETER_NUMBERS = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * (n - 1),
    "E": {6: 12, 7: 18, 8: 30}.get,
    "F": {4: 12}.get,
    "G": {2: 6}.get,
}


@dataclass(frozen=True)
class DynkinData:
    type_name: str
    rank: int
    cartan: tuple
    positive_roots: tuple
    coxeter_number: int

    @property
    def simple_roots(self):
        n = self.rank
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def parse_type(name):
    m = re.fullmatch(r"([ABCDEFG])_?(\d+)", name.strip().upper())
    if not m:
        raise DomainError(f"unknown Dynkin type {name!r}")
    return m.group(1), int(m.group(2))


def valued_edges(family, rank):
    """Edges of the diagram as (i, j, a_ij, a_ji) with 0-based vertices.

    a_ij are the off-diagonal Cartan entries (negative integers).
    """
    n = rank

    def path(k):
        return [(i, i + 1, -1, -1) for i in range(k - 1)]

    if family == "A":
        if n < 1:
            raise DomainError("A_n needs n >= 1")
        return path(n)
    if family == "B":
        if n < 2:
            raise DomainError("B_n needs n >= 2")
        return path(n - 1) + [(n - 2, n - 1, -1, -2)]
    if family == "C":
        if n < 2:
            raise DomainError("C_n needs n >= 2")
        return path(n - 1) + [(n - 2, n - 1, -2, -1)]
    if family == "D":
        if n < 3:
            raise DomainError("D_n needs n >= 3")
        return path(n - 1) + [(n - 3, n - 1, -1, -1)]
    if family == "E":
        if n not in (6, 7, 8):
            raise DomainError("E_n needs n in {6,7,8}")
        edges = [(0, 2, -1, -1), (2, 3, -1, -1), (1, 3, -1, -1)]
        edges += [(i, i + 1, -1, -1) for i in range(3, n - 1)]
        return edges
    if family == "F":
        if n != 4:
            raise DomainError("F_n needs n = 4")
        return [(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)]
    if family == "G":
        if n != 2:
            raise DomainError("G_n needs n = 2")
        return [(0, 1, -3, -1)]
    raise DomainError(f"unknown family {family!r}")


def cartan_matrix(family, rank):
    n = rank
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, aij, aji in valued_edges(family, rank):
        cartan[i][j] = aij
        cartan[j][i] = aji
    return tuple(tuple(row) for row in cartan)


def positive_roots_from_cartan(cartan, cap=2000):
    """Close the simple roots under simple reflections; DomainError when the
    closure exceeds `cap` (the root system is not finite)."""
    n = len(cartan)
    simple = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                refl = list(beta)
                refl[i] -= pairing
                refl = tuple(refl)
                if refl not in roots:
                    roots.add(refl)
                    new.append(refl)
            if len(roots) > cap:
                raise DomainError("root closure exceeded cap; Cartan matrix is not of finite type")
        frontier = new
    return tuple(sorted(r for r in roots if all(c >= 0 for c in r)))


def dynkin_data(name):
    family, rank = parse_type(name)
    cartan = cartan_matrix(family, rank)
    roots = positive_roots_from_cartan(cartan)
    entry = COXETER_NUMBERS[family]
    h = entry(rank) if callable(entry) else entry
    if h is None:
        raise DomainError(f"no Coxeter number for {family}{rank}")
    if 2 * len(roots) != rank * h:
        raise DomainError(
            f"internal table inconsistency for {family}{rank}: "
            f"{len(roots)} positive roots vs n*h/2 = {rank * h // 2}"
        )
    return DynkinData(f"{family}{rank}", rank, cartan, roots, h)


def cartan_companion(rows, n):
    """Cartan companion 2I - |B| of the principal part of an exchange matrix."""
    return tuple(
        tuple(2 if i == j else -abs(rows[i][j]) for j in range(n)) for i in range(n)
    )
