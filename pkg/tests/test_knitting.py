import pytest

from cluster_workbench.catalog import dynkin_quiver, g2_quiver, kronecker_quiver
from cluster_workbench.dynkin import cartan_companion, dynkin_data, positive_roots_from_cartan
from cluster_workbench.errors import DomainError
from cluster_workbench.knitting import Repetition, knit, knitting_variable_set, root_bijection
from cluster_workbench.laurent import LaurentPolynomial
from cluster_workbench.seeds import all_cluster_variables, exchange_graph


def lp(nvars, terms):
    return LaurentPolynomial.from_terms(nvars, terms)


def test_dynkin_data_a2():
    data = dynkin_data("A2")
    assert data.coxeter_number == 3
    assert set(data.positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_dynkin_data_g2():
    data = dynkin_data("G2")
    assert data.cartan == ((2, -3), (-1, 2))
    assert data.coxeter_number == 6
    assert set(data.positive_roots) == {
        (1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2),
    }


def test_dynkin_data_d4_by_reflection_closure():
    data = dynkin_data("D4")
    assert data.coxeter_number == 6
    assert len(data.positive_roots) == 12  # 4*6/2


def test_dynkin_data_counts():
    for name, h in [("A5", 6), ("B3", 6), ("C4", 8), ("D5", 8),
                    ("E6", 12), ("E7", 18), ("E8", 30), ("F4", 12)]:
        data = dynkin_data(name)
        assert data.coxeter_number == h
        assert 2 * len(data.positive_roots) == data.rank * h


def test_unknown_type_rejected():
    with pytest.raises(DomainError):
        dynkin_data("H3")
    with pytest.raises(DomainError):
        dynkin_data("E9")


def test_infinite_cartan_closure_blows_up():
    with pytest.raises(DomainError):
        positive_roots_from_cartan(((2, -2), (-2, 2)), cap=100)  # affine A1


def test_a2_knitting_sequence():
    frame = knit(dynkin_quiver("A2"))
    assert frame.period == 5
    x1p = lp(2, {(-1, 0): 1, (-1, 1): 1})
    x2p = lp(2, {(-1, -1): 1, (0, -1): 1, (-1, 0): 1})
    x1pp = lp(2, {(0, -1): 1, (1, -1): 1})
    x1 = lp(2, {(1, 0): 1})
    x2 = lp(2, {(0, 1): 1})
    assert frame.slices[1] == (x1p, x2p)
    assert frame.slices[2] == (x1pp, x1)
    assert frame.slices[3] == (x2, x1p)
    assert frame.slices[5] == (x1, x2)


def test_a3_second_slice_value():
    frame = knit(dynkin_quiver("A3"))
    x = [LaurentPolynomial.variable(i, 3) for i in range(3)]
    # x2' = (1 + x1' x3)/x2 = (x1 + x3 + x2 x3)/(x1 x2)
    assert frame.slices[1][1] == (x[0] + x[2] + x[1] * x[2]).div_exact(x[0] * x[1])


def test_g2_knitting_value():
    frame = knit(g2_quiver())
    x = [LaurentPolynomial.variable(i, 2) for i in range(2)]
    expected = (1 + x[0] ** 3 + 3 * x[1] + 3 * x[1] ** 2 + x[1] ** 3).div_exact(
        x[0] ** 3 * x[1]
    )
    assert frame.slices[1][1] == expected


def test_knitting_set_equals_mutation_set():
    for quiver in [dynkin_quiver("A2"), dynkin_quiver("A3"), g2_quiver()]:
        assert knitting_variable_set(quiver) == all_cluster_variables(quiver)


def test_knitting_variable_counts():
    assert len(knitting_variable_set(dynkin_quiver("A2"))) == 5
    assert len(knitting_variable_set(dynkin_quiver("A3"))) == 9
    assert len(knitting_variable_set(g2_quiver())) == 8


def test_left_right_symmetry():
    for quiver in [dynkin_quiver("A3"), dynkin_quiver("D4"), g2_quiver()]:
        right = knit(quiver, direction=1)
        left = knit(quiver, direction=-1)
        assert right.variable_set() == left.variable_set()


def test_non_dynkin_rejected():
    with pytest.raises(DomainError):
        knitting_variable_set(kronecker_quiver())


def test_every_a3_slice_is_a_cluster():
    quiver = dynkin_quiver("A3")
    frame = knit(quiver)
    graph = exchange_graph(quiver)
    clusters = {frozenset(s.mutable_variables()) for s in graph.seeds}
    # slices of the repetition: pick p-indices per row compatible with the
    # arrows; for the linear orientation row i may sit at column p or p+1
    # relative to row i+1's column
    period = frame.period
    values = frame.slices
    for p3 in range(period):
        for p2 in (p3, p3 + 1):
            for p1 in (p2, p2 + 1):
                if max(p1, p2, p3) >= len(values):
                    continue
                slice_cluster = frozenset(
                    {values[p1][0], values[p2][1], values[p3][2]}
                )
                assert slice_cluster in clusters


def test_root_bijection_examples():
    mapping = root_bijection(dynkin_quiver("A3"))
    x = [LaurentPolynomial.variable(i, 3) for i in range(3)]
    # alpha_2 + alpha_3 <-> (x1 + x1 x2 + x3)/(x2 x3)
    assert mapping[(0, 1, 1)] == (x[0] + x[0] * x[1] + x[2]).div_exact(x[1] * x[2])
    a2map = root_bijection(dynkin_quiver("A2"))
    y = [LaurentPolynomial.variable(i, 2) for i in range(2)]
    assert a2map[(0, 1)] == (1 + y[0]).div_exact(y[1])


def test_root_bijection_size():
    for name in ["A2", "A3", "D4"]:
        quiver = dynkin_quiver(name)
        data = dynkin_data(name)
        assert len(root_bijection(quiver)) == data.rank * data.coxeter_number // 2


def test_cartan_companion():
    q = g2_quiver()
    assert cartan_companion(q.rows, 2) == ((2, -3), (-1, 2))


def test_repetition_structure_and_render():
    quiver = dynkin_quiver("A2")
    rep = Repetition.build(quiver, 0, 2)
    assert ((0, 0), (0, 1), 1, 1) in rep.arrows  # copy arrow
    assert ((0, 1), (1, 0), 1, 1) in rep.arrows  # shifted reverse arrow
    assert rep.tau((1, 0)) == (0, 0)
    frame = knit(quiver)
    text = rep.render(assignment=frame.assignment)
    assert "x1" in text and "\n" in text


def test_g2_repetition_valuations_alternate():
    rep = Repetition.build(g2_quiver(), 0, 1)
    copy_arrows = [a for a in rep.arrows if a[0][0] == a[1][0]]
    sigma_arrows = [a for a in rep.arrows if a[0][0] != a[1][0]]
    assert all(a[2:] == (3, 1) for a in copy_arrows)
    assert all(a[2:] == (1, 3) for a in sigma_arrows)


def test_explicit_window_without_period():
    frame = knit(dynkin_quiver("A3"), window=2)
    assert frame.period is None
    assert len(frame.slices) == 3
