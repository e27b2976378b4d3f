"""Exact seed mutation, cluster variables, denominator vectors and
exchange-graph enumeration.

Cluster variables are stored as reduced Laurent polynomials (never unreduced
fractions); the exchange relation performs one exact division, whose success
is guaranteed by the Laurent phenomenon and enforced at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernel
from .errors import DomainError, IntegrityError
from .laurent import LaurentPolynomial
from .quiver import IceQuiver, mutate_matrix

DEFAULT_SEED_CAP = 50000
DEFAULT_VAR_CAP = 20000


class Seed:
    """A quiver plus an extended cluster of m Laurent polynomials; positions
    n..m-1 hold the frozen coefficient generators and never mutate."""

    __slots__ = ("quiver", "cluster", "_key")

    def __init__(self, quiver, cluster):
        if len(cluster) != quiver.m:
            raise DomainError("cluster must have one entry per vertex")
        self.quiver = quiver
        self.cluster = tuple(cluster)
        self._key = None

    @classmethod
    def initial(cls, quiver):
        gens = tuple(
            LaurentPolynomial.variable(i, quiver.m) for i in range(quiver.m)
        )
        return cls(quiver, gens)

    def mutable_variables(self):
        return self.cluster[: self.quiver.n]

    def __eq__(self, other):
        return (
            isinstance(other, Seed)
            and self.quiver == other.quiver
            and self.cluster == other.cluster
        )

    def __hash__(self):
        return hash((self.quiver, self.cluster))

    def canonical_seed_key(self):
        """Key invariant under simultaneous renumbering of mutable vertices
        and their cluster positions (frozen vertices stay pinned: they carry
        distinct coefficient generators)."""
        if self._key is not None:
            return self._key
        q = self.quiver
        colors = [0] * q.n + [1 + i for i in range(q.m - q.n)]
        flat, perms = kernel.canonical_all(q.full_matrix(), colors)
        serialized = [p.sorted_packed() for p in self.cluster]
        best = min(
            tuple(serialized[perm[i]] for i in range(q.m)) for perm in perms
        )
        self._key = (flat, best)
        return self._key

    def to_json(self):
        return {
            "quiver": self.quiver.to_json(),
            "cluster": [p.to_json_terms() for p in self.cluster],
        }

    @classmethod
    def from_json(cls, data):
        quiver = IceQuiver.from_json(data["quiver"])
        cluster = [
            LaurentPolynomial.from_json_terms(quiver.m, terms)
            for terms in data["cluster"]
        ]
        return cls(quiver, cluster)

    def __repr__(self):
        vars_str = ", ".join(p.format() for p in self.mutable_variables())
        return f"Seed({vars_str})"


def mutate_seed(seed, k):
    """Seed mutation at the mutable vertex k (0-based): the new variable is
    (prod u_i^[b_ik]+ + prod u_i^[-b_ik]+) / u_k with products over all
    vertices, computed by exact Laurent division."""
    q = seed.quiver
    if not 0 <= k < q.n:
        raise DomainError(f"cannot mutate at non-mutable index {k}")
    m = q.m
    pos = LaurentPolynomial.one(m)
    neg = LaurentPolynomial.one(m)
    for i in range(m):
        b = q.rows[i][k]
        if b > 0:
            pos = pos * seed.cluster[i] ** b
        elif b < 0:
            neg = neg * seed.cluster[i] ** (-b)
    total = pos + neg
    new_var = total.exact_div(seed.cluster[k])
    if new_var is None:
        raise IntegrityError(
            "exchange division failed; this would contradict the Laurent phenomenon"
        )
    cluster = list(seed.cluster)
    cluster[k] = new_var
    return Seed(mutate_matrix(q, k), cluster)


def mutate_seed_sequence(seed, ks):
    for k in ks:
        seed = mutate_seed(seed, k)
    return seed


def denominator_vector(poly, n=None):
    """Exponent vector of the monomial denominator, restricted to the first n
    (mutable) variables; the initial variable x_i gets -e_i."""
    n = poly.nvars if n is None else n
    mins = poly.min_exponents()
    return tuple(-mins[i] for i in range(n))


@dataclass
class ExchangeGraph:
    seeds: list
    edges: set
    variables: set
    complete: bool
    hit_seed_cap: bool = False
    hit_var_cap: bool = False
    keys: dict = field(default_factory=dict)

    @property
    def seed_count(self):
        return len(self.seeds)

    @property
    def edge_count(self):
        return len(self.edges)

    def degree_sequence(self):
        deg = [0] * len(self.seeds)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return sorted(deg)

    def to_json(self):
        return {
            "seed_count": self.seed_count,
            "edge_count": self.edge_count,
            "variable_count": len(self.variables),
            "complete": self.complete,
            "seeds": [s.to_json() for s in self.seeds],
            "edges": sorted(sorted(e) for e in self.edges),
            "variables": sorted(
                p.format() for p in self.variables
            ),
        }


def exchange_graph(quiver, seed_cap=DEFAULT_SEED_CAP, var_cap=DEFAULT_VAR_CAP):
    """BFS over seeds up to simultaneous renumbering, recording mutation edges
    and the set of cluster variables; stops with a partial graph when a cap
    is exceeded."""
    if seed_cap < 1 or var_cap < 1:
        raise DomainError("caps must be >= 1")
    initial = Seed.initial(quiver)
    key0 = initial.canonical_seed_key()
    index = {key0: 0}
    seeds = [initial]
    variables = set(initial.mutable_variables())
    edges = set()
    graph = ExchangeGraph(seeds, edges, variables, complete=False, keys=index)
    frontier = [0]
    while frontier:
        next_frontier = []
        for si in frontier:
            seed = seeds[si]
            for k in range(quiver.n):
                neighbor = mutate_seed(seed, k)
                nkey = neighbor.canonical_seed_key()
                ni = index.get(nkey)
                if ni is None:
                    if len(seeds) >= seed_cap:
                        graph.hit_seed_cap = True
                        return graph
                    ni = len(seeds)
                    index[nkey] = ni
                    seeds.append(neighbor)
                    next_frontier.append(ni)
                    variables.update(neighbor.mutable_variables())
                    if len(variables) > var_cap:
                        graph.hit_var_cap = True
                        return graph
                if ni != si:
                    edges.add(frozenset((si, ni)))
        frontier = next_frontier
    graph.complete = True
    return graph


def all_cluster_variables(quiver, seed_cap=DEFAULT_SEED_CAP, var_cap=DEFAULT_VAR_CAP):
    graph = exchange_graph(quiver, seed_cap, var_cap)
    if not graph.complete:
        raise DomainError("enumeration hit a cap before completing; raise the caps")
    return graph.variables
