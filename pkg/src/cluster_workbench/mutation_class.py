"""Mutation-class enumeration, cluster-finiteness classification and the
Markoff 3-cycle criterion."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import DomainError
from .quiver import IceQuiver, mutate_matrix

DEFAULT_CAP = int(os.environ.get("CLUSTER_WORKBENCH_CAP", "100000"))


@dataclass
class ClassReport:
    class_size: int
    exceeded_cap: bool
    max_multiplicity: int
    double_arrow_count: int
    dynkin_hit: str | None
    representatives: list = field(default_factory=list)
    keys: set | None = None

    def to_json(self):
        return {
            "class_size": self.class_size,
            "exceeded_cap": self.exceeded_cap,
            "max_multiplicity": self.max_multiplicity,
            "double_arrow_count": self.double_arrow_count,
            "dynkin_hit": self.dynkin_hit,
            "representatives": [q.to_json() for q in self.representatives],
        }


@dataclass
class Classification:
    status: str  # "finite" | "infinite" | "unknown"
    dynkin_type: str | None = None
    evidence: str = ""
    explored: int = 0

    def to_json(self):
        return {
            "status": self.status,
            "dynkin_type": self.dynkin_type,
            "evidence": self.evidence,
            "explored": self.explored,
        }


def detect_dynkin_orientation(quiver):
    """Name of the simply laced Dynkin diagram underlying the principal part,
    or None.  Requires all multiplicities 1, a connected underlying tree and
    an A/D/E degree profile."""
    n = quiver.n
    rows = quiver.rows
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            b = rows[i][j]
            if b == 0:
                continue
            if abs(b) != 1:
                return None
            edges.append((i, j))
    if len(edges) != n - 1:
        return None  # a tree has exactly n-1 edges; more means a cycle
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return None
    if any(len(adj[v]) > 3 for v in range(n)):
        return None
    forks = [v for v in range(n) if len(adj[v]) == 3]
    if len(forks) > 1:
        return None
    if not forks:
        return f"A{n}"
    fork = forks[0]
    branch_lengths = []
    for start in adj[fork]:
        length = 1
        prev, cur = fork, start
        while len(adj[cur]) == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            length += 1
        branch_lengths.append(length)
    branch_lengths.sort()
    if branch_lengths[0] != 1:
        return None
    if branch_lengths[1] == 1:
        return f"D{n}"
    if branch_lengths[1] == 2 and branch_lengths[2] in (2, 3, 4):
        return {2: "E6", 3: "E7", 4: "E8"}[branch_lengths[2]]
    return None


def mutation_class(quiver, cap=DEFAULT_CAP, max_representatives=3, stop_on=None,
                   threads=1, progress=None, collect_keys=False):
    """Breadth-first enumeration of all quivers reachable by iterated
    mutation, deduplicated by canonical key.

    stop_on:      optional predicate on ClassReport state; enumeration stops
                  early when it returns a truthy value (used by `classify`).
    threads:      frontier expansion is farmed out to a thread pool; insertion
                  into the visited set stays linearized in the caller.
    progress:     optional callback fed the running class size.
    collect_keys: attach the full canonical-key set to the report.
    """
    if cap < 1:
        raise DomainError("cap must be >= 1")
    start = quiver.canonical_representative()
    visited = {start.canonical_key()}
    report = ClassReport(
        class_size=1,
        exceeded_cap=False,
        max_multiplicity=start.max_multiplicity(),
        double_arrow_count=1 if start.max_multiplicity() == 2 else 0,
        dynkin_hit=detect_dynkin_orientation(start),
        representatives=[quiver],
    )
    if collect_keys:
        report.keys = visited
    if stop_on and stop_on(report):
        return report

    def expand(current):
        out = []
        for k in range(quiver.n):
            rep = mutate_matrix(current, k).canonical_representative()
            out.append((rep.canonical_key(), rep))
        return out

    pool = None
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        pool = ThreadPoolExecutor(max_workers=threads)
    try:
        frontier = [start]
        while frontier:
            if pool is not None:
                batches = pool.map(expand, frontier)
            else:
                batches = map(expand, frontier)
            next_frontier = []
            for batch in batches:
                for key, rep in batch:
                    if key in visited:
                        continue
                    if report.class_size >= cap:
                        report.exceeded_cap = True
                        return report
                    visited.add(key)
                    next_frontier.append(rep)
                    report.class_size += 1
                    mult = rep.max_multiplicity()
                    report.max_multiplicity = max(report.max_multiplicity, mult)
                    if mult == 2:
                        report.double_arrow_count += 1
                    if report.dynkin_hit is None:
                        report.dynkin_hit = detect_dynkin_orientation(rep)
                    if len(report.representatives) < max_representatives:
                        report.representatives.append(rep)
                    if stop_on and stop_on(report):
                        return report
                if progress is not None:
                    progress(report.class_size)
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)
    return report


def classify(quiver, cap=DEFAULT_CAP):
    """Cluster-finiteness of a quiver that is connected on its mutable part.

    Finite(Delta) when a Dynkin orientation shows up in the mutation class;
    Infinite on the arrow-multiplicity >= 3 criterion (n > 2), on two-vertex
    analysis, or when the exhausted class contains no Dynkin orientation;
    Unknown when the cap is hit first.
    """
    if not quiver.mutable_connected():
        raise DomainError("classification needs a quiver connected on its mutable part")
    n = quiver.n
    if n == 1:
        return Classification("finite", "A1", "single vertex", explored=1)
    if n == 2:
        b, c = quiver.rows[0][1], quiver.rows[1][0]
        product = abs(b * c)
        if product <= 3:
            name = {0: "A1xA1", 1: "A2", 2: "B2", 3: "G2"}[product]
            return Classification("finite", name, f"|b12*b21| = {product} <= 3", explored=1)
        return Classification(
            "infinite", None, f"two-vertex quiver with |b12*b21| = {product} >= 4", explored=1
        )

    def stop(report):
        return report.dynkin_hit is not None or report.max_multiplicity >= 3

    report = mutation_class(quiver, cap=cap, stop_on=stop)
    if report.dynkin_hit:
        return Classification(
            "finite", report.dynkin_hit, "Dynkin orientation found in mutation class",
            explored=report.class_size,
        )
    if report.max_multiplicity >= 3:
        return Classification(
            "infinite", None,
            f"arrow of multiplicity {report.max_multiplicity} >= 3 in mutation class",
            explored=report.class_size,
        )
    if report.exceeded_cap:
        return Classification("unknown", None, f"cap {cap} exceeded", explored=report.class_size)
    return Classification(
        "infinite", None,
        f"mutation class exhausted ({report.class_size} quivers) without a Dynkin orientation",
        explored=report.class_size,
    )


def markoff_acyclic_test(r, s, t):
    """True iff the 3-cycle with multiplicities r, s, t is mutation-equivalent
    to a quiver without a 3-cycle: r^2+s^2+t^2-rst > 4 or min(r,s,t) < 2."""
    if min(r, s, t) < 0:
        raise DomainError("multiplicities must be non-negative")
    return r * r + s * s + t * t - r * s * t > 4 or min(r, s, t) < 2
