import pytest

from cluster_workbench.errors import DomainError
from cluster_workbench.polygon import (
    all_triangulations,
    fan_triangulation,
    flip,
    flip_graph,
    polygon_triangulation_quiver,
    validate_triangulation,
)
from cluster_workbench.quiver import IceQuiver, mutate_matrix


def test_catalan_counts():
    assert len(all_triangulations(4)) == 2
    assert len(all_triangulations(5)) == 5
    assert len(all_triangulations(6)) == 14


def test_square_single_diagonal():
    q = polygon_triangulation_quiver(1, [(0, 2)])
    assert (q.n, q.m) == (1, 5)


def test_fan_hexagon_matches_worked_figure():
    q = polygon_triangulation_quiver(3, fan_triangulation(3, 0))
    assert (q.n, q.m) == (3, 9)
    # the figure: mutable diagonals 02, 03, 04; arrows 04->05, 03->04,
    # 45->04, 04->34, 02->03, 34->03, 03->23, 01->02, 23->02, 02->12
    names = ["02", "03", "04", "01", "05", "12", "23", "34", "45"]
    idx = {nm: i for i, nm in enumerate(names)}
    arrows = [
        ("04", "05"), ("03", "04"), ("45", "04"), ("04", "34"), ("02", "03"),
        ("34", "03"), ("03", "23"), ("01", "02"), ("23", "02"), ("02", "12"),
    ]
    figure = IceQuiver.from_arrows(
        3, [(idx[a], idx[b]) for a, b in arrows], m=9, names=names
    )
    assert q.is_isomorphic_to(figure)


def test_crossing_and_incomplete_sets_rejected():
    with pytest.raises(DomainError):
        validate_triangulation(6, [(0, 2), (1, 3), (0, 3)])
    with pytest.raises(DomainError):
        polygon_triangulation_quiver(3, [(0, 2), (0, 3)])  # one diagonal short
    with pytest.raises(DomainError):
        polygon_triangulation_quiver(3, [(0, 1), (0, 2), (0, 3)])  # side, not diagonal
    with pytest.raises(DomainError):
        polygon_triangulation_quiver(3, [(0, 2), (0, 2), (0, 3)])  # repeated


def test_flip_is_an_involution():
    for tri in all_triangulations(6):
        for d in tri:
            flipped = flip(6, tri, d)
            new_diag = next(x for x in flipped if x not in tri)
            assert tuple(sorted(flip(6, flipped, new_diag))) == tri


def test_flip_graph_hexagon():
    tris, edges = flip_graph(6)
    assert len(tris) == 14
    assert len(edges) == 21
    degree = {}
    for e in edges:
        for v in e:
            degree[v] = degree.get(v, 0) + 1
    assert set(degree.values()) == {3}


def test_flip_commutes_with_mutation_everywhere_on_the_hexagon():
    for tri in all_triangulations(6):
        q = polygon_triangulation_quiver(3, tri)
        for pos, diag in enumerate(tri):
            flipped = flip(6, tri, diag)
            q_flip = polygon_triangulation_quiver(3, flipped)
            q_mut = mutate_matrix(q, pos)
            assert q_flip.is_isomorphic_to(q_mut)


def test_pentagon_flip_graph_is_the_pentagon():
    tris, edges = flip_graph(5)
    assert len(tris) == 5
    assert len(edges) == 5
