import random

import pytest

from cluster_workbench.catalog import (
    dynkin_quiver,
    g2_quiver,
    paper_cyclic_quiver,
    paper_quiver_2,
)
from cluster_workbench.dynkin import dynkin_data
from cluster_workbench.errors import DomainError
from cluster_workbench.laurent import LaurentPolynomial
from cluster_workbench.quiver import IceQuiver
from cluster_workbench.seeds import (
    Seed,
    all_cluster_variables,
    denominator_vector,
    exchange_graph,
    mutate_seed,
    mutate_seed_sequence,
)


def lp(nvars, terms):
    return LaurentPolynomial.from_terms(nvars, terms)


def test_a2_first_exchange():
    seed = Seed.initial(dynkin_quiver("A2"))
    mutated = mutate_seed(seed, 0)
    assert mutated.cluster[0] == lp(2, {(-1, 0): 1, (-1, 1): 1})  # (1+x2)/x1


def test_paper_cyclic_double_mutation():
    seed = Seed.initial(paper_cyclic_quiver())
    seed = mutate_seed_sequence(seed, [0, 1])
    # u_2'' = (x1 + x2 + x3)/(x1 x2)
    assert seed.cluster[1] == lp(
        3, {(0, -1, 0): 1, (-1, 0, 0): 1, (-1, -1, 1): 1}
    )


def test_staircase_walk_fractions():
    # the four new fractions along the mutation walk 5, 3, 1, 6
    seed = Seed.initial(paper_quiver_2())
    seed = mutate_seed(seed, 4)
    x = [LaurentPolynomial.variable(i, 6) for i in range(6)]
    u5 = (x[2] * x[3] + x[1] * x[5]).div_exact(x[4])
    assert seed.cluster[4] == u5
    seed = mutate_seed(seed, 2)
    u3 = (x[2] * x[3] + x[0] * x[4] + x[1] * x[5]).div_exact(x[2] * x[4])
    assert seed.cluster[2] == u3
    seed = mutate_seed(seed, 0)
    u1 = (
        x[1] * x[2] * x[3]
        + x[2] ** 2 * x[3]
        + x[0] * x[1] * x[4]
        + x[1] ** 2 * x[5]
        + x[1] * x[2] * x[5]
    ).div_exact(x[0] * x[2] * x[4])
    assert seed.cluster[0] == u1
    seed = mutate_seed(seed, 5)
    u6 = (x[2] * x[3] + x[3] * x[4] + x[1] * x[5]).div_exact(x[4] * x[5])
    assert seed.cluster[5] == u6


def test_seed_mutation_involution():
    seed = Seed.initial(dynkin_quiver("A3"))
    for k in range(3):
        assert mutate_seed(mutate_seed(seed, k), k) == seed


def test_mutation_rejects_frozen_vertex():
    quiver = IceQuiver.from_arrows(1, [(0, 1)], m=2)
    seed = Seed.initial(quiver)
    with pytest.raises(DomainError):
        mutate_seed(seed, 1)


def test_a1_exchange_graph():
    graph = exchange_graph(IceQuiver(1, 1, [[0]]))
    assert graph.seed_count == 2
    assert graph.edge_count == 1
    assert graph.variables == {
        lp(1, {(1,): 1}),
        lp(1, {(-1,): 2}),  # x1' = 2/x1
    }


def test_a2_pentagon():
    graph = exchange_graph(dynkin_quiver("A2"))
    assert (graph.seed_count, graph.edge_count, len(graph.variables)) == (5, 5, 5)
    x1 = lp(2, {(1, 0): 1})
    x2 = lp(2, {(0, 1): 1})
    expected = {
        x1,
        x2,
        lp(2, {(-1, 0): 1, (-1, 1): 1}),          # (1+x2)/x1
        lp(2, {(-1, -1): 1, (0, -1): 1, (-1, 0): 1}),  # (x1+1+x2)/(x1x2)
        lp(2, {(0, -1): 1, (1, -1): 1}),          # (1+x1)/x2
    }
    assert graph.variables == expected


def test_a3_exchange_graph_and_variable_list():
    graph = exchange_graph(dynkin_quiver("A3"))
    assert graph.seed_count == 14
    assert graph.edge_count == 21
    assert graph.degree_sequence() == [3] * 14
    x = [LaurentPolynomial.variable(i, 3) for i in range(3)]
    listed = {
        x[0],
        x[1],
        x[2],
        (1 + x[1]).div_exact(x[0]),
        (x[0] + x[2] + x[1] * x[2]).div_exact(x[0] * x[1]),
        (x[0] + x[0] * x[1] + x[2] + x[1] * x[2]).div_exact(x[0] * x[1] * x[2]),
        (x[0] + x[2]).div_exact(x[1]),
        (x[0] + x[0] * x[1] + x[2]).div_exact(x[1] * x[2]),
        (1 + x[1]).div_exact(x[2]),
    }
    assert graph.variables == listed


def test_g2_variables_and_denominators():
    variables = all_cluster_variables(g2_quiver())
    assert len(variables) == 8
    dvecs = {denominator_vector(v, 2) for v in variables}
    assert dvecs == {
        (-1, 0), (0, -1),  # initial
        (1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2),
    }


def test_denominator_vector_conventions():
    x3 = LaurentPolynomial.variable(2, 3)
    assert denominator_vector(x3, 3) == (0, 0, -1)
    v = lp(2, {(-1, -1): 1, (0, -1): 1, (-1, 0): 1})
    assert denominator_vector(v, 2) == (1, 1)


def test_cluster_determines_seed():
    # no two enumerated seeds share the same unordered cluster
    for name in ["A2", "A3"]:
        graph = exchange_graph(dynkin_quiver(name))
        clusters = {frozenset(s.mutable_variables()) for s in graph.seeds}
        assert len(clusters) == graph.seed_count


def test_seed_identity_up_to_simultaneous_renumbering():
    quiver = dynkin_quiver("A2")
    seed = Seed.initial(quiver)
    swapped_quiver = quiver.permuted([1, 0])
    swapped = Seed(swapped_quiver, (seed.cluster[1], seed.cluster[0]))
    assert swapped.canonical_seed_key() == seed.canonical_seed_key()


def test_laurent_phenomenon_random_walks():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(2, 5)
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b = rng.randint(-2, 2)
                mat[i][j] = b
                mat[j][i] = -b
        seed = Seed.initial(IceQuiver(n, n, mat))
        for _ in range(6):
            seed = mutate_seed(seed, rng.randrange(n))  # IntegrityError = failure


def test_subtraction_free_numerators_in_finite_type():
    for name in ["A2", "A3", "G2"]:
        for v in all_cluster_variables(dynkin_quiver(name) if name != "G2" else g2_quiver()):
            assert all(c > 0 for c in v.terms.values())


def test_variable_count_identity():
    # variable count = n + n*h/2 in finite type
    for name in ["A2", "A3", "A4", "D4"]:
        data = dynkin_data(name)
        count = len(all_cluster_variables(dynkin_quiver(name)))
        assert count == data.rank + data.rank * data.coxeter_number // 2


def test_root_bijection_through_denominators():
    for name in ["A2", "A3", "D4"]:
        quiver = dynkin_quiver(name)
        data = dynkin_data(name)
        variables = all_cluster_variables(quiver)
        non_initial = {
            denominator_vector(v, quiver.n)
            for v in variables
            if denominator_vector(v, quiver.n) not in
            {tuple(-int(i == j) for j in range(quiver.n)) for i in range(quiver.n)}
        }
        assert non_initial == set(data.positive_roots)


def test_caps_reported():
    graph = exchange_graph(dynkin_quiver("A3"), seed_cap=3)
    assert not graph.complete
    assert graph.hit_seed_cap
    with pytest.raises(DomainError):
        all_cluster_variables(dynkin_quiver("A3"), seed_cap=3)


def test_seed_json_roundtrip():
    seed = mutate_seed(Seed.initial(dynkin_quiver("A2")), 0)
    again = Seed.from_json(seed.to_json())
    assert again == seed


def test_coefficients_never_mutate():
    quiver = IceQuiver.from_arrows(2, [(0, 1), (2, 0), (1, 3)], m=4)
    seed = Seed.initial(quiver)
    walked = mutate_seed_sequence(seed, [0, 1, 0, 1])
    gens = [LaurentPolynomial.variable(i, 4) for i in range(4)]
    assert walked.cluster[2] == gens[2]
    assert walked.cluster[3] == gens[3]
    # frozen variables never appear inverted
    for poly in walked.cluster[:2]:
        mins = poly.min_exponents()
        assert mins[2] >= 0 and mins[3] >= 0