from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cluster_workbench.catalog import (
    cyclic_triangle,
    dynkin_quiver,
    g2_quiver,
    kronecker_quiver,
    paper_quiver_2,
    staircase_quiver,
)
from cluster_workbench.errors import DomainError
from cluster_workbench.mutation_class import detect_dynkin_orientation
from cluster_workbench.quiver import IceQuiver, canonical_form, mutate_matrix, mutate_sequence


def brute_force_isomorphic(qa, qb):
    """Oracle: try every vertex permutation (mutable->mutable, frozen->frozen)."""
    if (qa.n, qa.m) != (qb.n, qb.m):
        return False
    fa, fb = qa.full_matrix(), qb.full_matrix()
    fro = range(qa.n, qa.m)
    for pm in permutations(range(qa.n)):
        for pf in permutations(fro):
            perm = pm + pf
            if all(
                fa[perm[i]][perm[j]] == fb[i][j]
                for i in range(qa.m)
                for j in range(qa.m)
            ):
                return True
    return False


def test_mutation_of_cyclic_triangle():
    # mutating the 3-cycle at vertex 1 removes the arrow between 2 and 3
    r = cyclic_triangle()
    r1 = mutate_matrix(r, 0)
    assert sorted(r1.arrows()) == [(0, 2, 1), (1, 0, 1)]


def test_mutation_is_involution():
    q = paper_quiver_2()
    for k in range(q.n):
        assert mutate_matrix(mutate_matrix(q, k), k) == q


def test_mutation_at_frozen_or_out_of_range():
    q = IceQuiver.from_arrows(1, [(1, 0)], m=2)
    with pytest.raises(DomainError):
        mutate_matrix(q, 1)
    with pytest.raises(DomainError):
        mutate_matrix(q, -1)


def test_d6_mutation_walk():
    # mutations at 5, 3, 1, 6 turn the 6-vertex staircase into an acyclic
    # orientation of D6
    q = paper_quiver_2()
    final = mutate_sequence(q, [4, 2, 0, 5])
    assert sorted(final.arrows()) == [
        (0, 1, 1), (0, 2, 1), (3, 5, 1), (4, 0, 1), (5, 4, 1),
    ]
    assert final.is_acyclic()
    assert detect_dynkin_orientation(final) == "D6"


def test_skew_symmetrizability_preserved_with_same_symmetrizer():
    q = g2_quiver()
    d = q.symmetrizer()
    for k in range(2):
        assert mutate_matrix(q, k).symmetrizer() == d


def test_not_skew_symmetrizable_rejected():
    with pytest.raises(DomainError):
        IceQuiver(2, 2, [[0, 1], [1, 0]])
    with pytest.raises(DomainError):
        IceQuiver(2, 2, [[0, 1], [0, 0]])
    with pytest.raises(DomainError):
        IceQuiver(2, 2, [[1, 1], [-1, 0]])  # loop


def test_canonical_form_relabeling_invariance():
    a = IceQuiver.from_arrows(3, [(0, 1), (1, 2)])  # 1->2->3
    b = IceQuiver.from_arrows(3, [(2, 0), (0, 1)])  # relabeled 3->1->2
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_distinguishes_orientations():
    # derived by brute force over all 6 permutations
    a = IceQuiver.from_arrows(3, [(0, 1), (1, 2)])  # 1->2->3
    b = IceQuiver.from_arrows(3, [(0, 1), (2, 1)])  # 1->2<-3
    assert not brute_force_isomorphic(a, b)
    assert canonical_form(a) != canonical_form(b)


def test_canonical_form_frozen_not_interchangeable():
    mutable = IceQuiver.from_arrows(2, [(0, 1)])
    iced = IceQuiver.from_arrows(1, [(0, 1)], m=2)
    assert canonical_form(mutable) != canonical_form(iced)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_canonical_form_is_a_class_function(data):
    n = data.draw(st.integers(2, 5))
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            entries[(i, j)] = data.draw(st.integers(-2, 2))
    mat = [[0] * n for _ in range(n)]
    for (i, j), b in entries.items():
        mat[i][j] = b
        mat[j][i] = -b
    q = IceQuiver(n, n, mat)
    perm = data.draw(st.permutations(range(n)))
    assert canonical_form(q.permuted(list(perm))) == canonical_form(q)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_canonical_form_agrees_with_brute_force(data):
    n = data.draw(st.integers(2, 4))
    mats = []
    for _ in range(2):
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b = data.draw(st.integers(-1, 1))
                mat[i][j] = b
                mat[j][i] = -b
        mats.append(IceQuiver(n, n, mat))
    qa, qb = mats
    assert (canonical_form(qa) == canonical_form(qb)) == brute_force_isomorphic(qa, qb)


def test_symmetrizer_values():
    assert g2_quiver().symmetrizer() == (1, 3)
    assert dynkin_quiver("A3").symmetrizer() == (1, 1, 1)
    assert dynkin_quiver("B3").symmetrizer() == (2, 2, 1)


def test_text_roundtrip():
    q = staircase_quiver(3)
    again = IceQuiver.loads(q.to_text())
    assert again == q


def test_json_roundtrip_with_frozen_and_names():
    q = IceQuiver.from_arrows(2, [(0, 1), (2, 0), (1, 3)], m=4, names=["a", "b", "c", "d"])
    again = IceQuiver.from_json(q.to_json())
    assert again == q
    assert again.names == ("a", "b", "c", "d")
    assert IceQuiver.loads(q.to_text()) == q


def test_json_symmetrizer_validation():
    data = g2_quiver().to_json()
    assert data["symmetrizer"] == [1, 3]
    IceQuiver.from_json(data)  # accepted
    data["symmetrizer"] = [1, 2]
    with pytest.raises(DomainError):
        IceQuiver.from_json(data)


def test_kronecker_mutation_class_is_itself():
    q = kronecker_quiver()
    for k in range(2):
        assert canonical_form(mutate_matrix(q, k)) == canonical_form(q)
