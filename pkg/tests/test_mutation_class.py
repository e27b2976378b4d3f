import random
from itertools import permutations

import pytest

from cluster_workbench.catalog import (
    cyclic_triangle,
    dynkin_quiver,
    kronecker_quiver,
    triangle_strip,
)
from cluster_workbench.errors import DomainError
from cluster_workbench.mutation_class import (
    classify,
    markoff_acyclic_test,
    mutation_class,
)
from cluster_workbench.quiver import IceQuiver, mutate_matrix


def brute_force_class_size(quiver):
    """Independent oracle: BFS with permutation-based isomorphism testing."""

    def key_of(q):
        full = q.full_matrix()
        best = None
        for perm in permutations(range(q.n)):
            flat = tuple(
                full[perm[i]][perm[j]] for i in range(q.n) for j in range(q.n)
            )
            if best is None or flat < best:
                best = flat
        return best

    seen = {key_of(quiver)}
    queue = [quiver]
    while queue:
        current = queue.pop()
        for k in range(quiver.n):
            nxt = mutate_matrix(current, k)
            key = key_of(nxt)
            if key not in seen:
                seen.add(key)
                queue.append(nxt)
    return len(seen)


def test_a3_class_matches_brute_force():
    q = dynkin_quiver("A3")
    report = mutation_class(q)
    assert report.class_size == 4
    assert report.class_size == brute_force_class_size(q)
    assert not report.exceeded_cap


def test_kronecker_class_is_singleton():
    report = mutation_class(kronecker_quiver())
    assert report.class_size == 1


def test_cap_exhaustion_is_reported_not_fatal():
    report = mutation_class(triangle_strip(9), cap=10)
    assert report.exceeded_cap
    assert report.class_size == 10


def test_class_independent_of_start_member():
    q = dynkin_quiver("A3")
    base = mutation_class(q, collect_keys=True)
    rng = random.Random(3)
    member = q
    for _ in range(5):
        member = mutate_matrix(member, rng.randrange(q.n))
    other = mutation_class(member, collect_keys=True)
    assert base.keys == other.keys


def test_every_member_generates_the_same_class():
    q = cyclic_triangle()
    base = mutation_class(q, collect_keys=True)
    for rep in base.representatives:
        again = mutation_class(rep, collect_keys=True)
        assert again.keys == base.keys


def test_classify_triangle_strip_family():
    expected = {3: "A3", 4: "D4", 5: "D5", 6: "E6", 7: "E7", 8: "E8"}
    for n, name in expected.items():
        result = classify(triangle_strip(n))
        assert result.status == "finite"
        assert result.dynkin_type == name


def test_classify_single_vertex():
    result = classify(IceQuiver(1, 1, [[0]]))
    assert result.status == "finite"
    assert result.dynkin_type == "A1"


def test_classify_two_vertex_rules():
    assert classify(dynkin_quiver("A2")).dynkin_type == "A2"
    assert classify(dynkin_quiver("G2")).dynkin_type == "G2"
    assert classify(kronecker_quiver()).status == "infinite"


def test_classify_wild_by_multiplicity():
    result = classify(cyclic_triangle(3, 3, 3), cap=500)
    assert result.status == "infinite"
    assert "multiplicity" in result.evidence


def test_classify_unknown_on_cap():
    result = classify(triangle_strip(9), cap=50)
    assert result.status == "unknown"


def test_classify_requires_connected():
    mat = [[0, 0], [0, 0]]
    with pytest.raises(DomainError):
        classify(IceQuiver(2, 2, mat))


def test_markoff_criterion():
    assert markoff_acyclic_test(1, 1, 1) is True
    assert markoff_acyclic_test(2, 2, 2) is False  # 4+4+4-8 = 4, min = 2
    assert markoff_acyclic_test(0, 5, 7) is True  # min < 2
    assert markoff_acyclic_test(3, 3, 3) is False  # 27-27 = 0 and min >= 2
    with pytest.raises(DomainError):
        markoff_acyclic_test(-1, 1, 1)


def test_markoff_agrees_with_enumeration_on_small_cases():
    # 3-cycles with multiplicities (r,s,t): an acyclic member shows up in the
    # class exactly when the criterion holds
    for r, s, t, criterion in [
        (1, 1, 1, True),
        (1, 2, 2, True),
        (2, 2, 3, True),
        (2, 2, 2, False),
        (3, 3, 3, False),
    ]:
        assert markoff_acyclic_test(r, s, t) is criterion
        report = mutation_class(cyclic_triangle(r, s, t), cap=2000, max_representatives=2000)
        found_acyclic = any(rep.is_acyclic() for rep in report.representatives)
        assert found_acyclic is criterion


def test_progress_callback_and_threads():
    sizes = []
    report = mutation_class(dynkin_quiver("A4"), threads=2, progress=sizes.append)
    assert report.class_size == 6
    assert sizes and sizes[-1] == 6
