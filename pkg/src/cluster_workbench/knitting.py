"""Knitting over the repetition quiver of a (valued) Dynkin orientation.

For an arrow i -> j of weight b_ij (with b_ji = -b_ji_abs on the other side),
the repetition ZQ has copy arrows (p,i) -> (p,j) and shifted reverse arrows
(p-1,j) -> (p,i).  The value knitted at (p,i) is

    x_{p,i} = (1 + prod_{b_ji>0} x_{p,j}^{b_ji} * prod_{b_ij>0} x_{p-1,j}^{-b_ji})
              / x_{p-1,i}

with the exponents given by the valuation at the source end of each arrow;
for simply laced diagrams all exponents are 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynkin import cartan_companion, positive_roots_from_cartan
from .errors import DomainError, IntegrityError
from .laurent import LaurentPolynomial
from .seeds import denominator_vector


@dataclass(frozen=True)
class Repetition:
    """A finite window of the repetition quiver ZQ."""

    quiver: object
    p_min: int
    p_max: int
    vertices: tuple  # (p, i) pairs
    arrows: tuple  # (source, target, valuation_at_source, valuation_at_target)

    @classmethod
    def build(cls, quiver, p_min, p_max):
        n = quiver.n
        rows = quiver.rows
        vertices = tuple((p, i) for p in range(p_min, p_max + 1) for i in range(n))
        arrows = []
        for p in range(p_min, p_max + 1):
            for i in range(n):
                for j in range(n):
                    if rows[i][j] > 0:
                        # copy arrow (p,i) -> (p,j), valuations (b_ij, -b_ji)
                        arrows.append(((p, i), (p, j), rows[i][j], -rows[j][i]))
                        # shifted reverse arrow (p,j) -> (p+1,i)
                        if p + 1 <= p_max:
                            arrows.append(((p, j), (p + 1, i), -rows[j][i], rows[i][j]))
        return cls(quiver, p_min, p_max, vertices, tuple(arrows))

    def tau(self, vertex):
        p, i = vertex
        return (p - 1, i)

    def render(self, assignment=None, names=None):
        """Plain-text rendering: one row per diagram vertex, one column per
        translation step."""
        n = self.quiver.n
        cells = {}
        width = 4
        for p in range(self.p_min, self.p_max + 1):
            for i in range(n):
                if assignment and (p, i) in assignment:
                    label = assignment[(p, i)].format(names)
                else:
                    label = f"({p},{i + 1})"
                cells[(p, i)] = label
                width = max(width, len(label) + 2)
        lines = []
        for i in range(n):
            row = "".join(
                cells[(p, i)].ljust(width) for p in range(self.p_min, self.p_max + 1)
            )
            lines.append(row.rstrip())
        return "\n".join(lines)


@dataclass
class KnittingFrame:
    quiver: object
    slices: list  # slices[p] is a tuple of n Laurent polynomials
    period: int | None
    direction: int = 1

    @property
    def assignment(self):
        return {
            (p * self.direction, i): poly
            for p, slice_ in enumerate(self.slices)
            for i, poly in enumerate(slice_)
        }

    def variable_set(self):
        out = set()
        upto = len(self.slices) if self.period is None else self.period
        for slice_ in self.slices[:upto]:
            out.update(slice_)
        return out

    def to_json(self):
        return {
            "period": self.period,
            "direction": self.direction,
            "slices": [[p.to_json_terms() for p in s] for s in self.slices],
        }


def _check_dynkin(quiver):
    if quiver.n != quiver.m:
        raise DomainError("knitting is defined for quivers without frozen vertices")
    if not quiver.mutable_connected():
        raise DomainError("knitting needs a connected diagram")
    cartan = cartan_companion(quiver.rows, quiver.n)
    try:
        roots = positive_roots_from_cartan(cartan, cap=60 * quiver.n * quiver.n + 240)
    except DomainError as exc:
        raise DomainError(f"not a Dynkin orientation: {exc}") from exc
    if quiver.is_acyclic() is False:
        raise DomainError("a Dynkin orientation cannot contain oriented cycles")
    h = 2 * len(roots) // quiver.n
    return roots, h


def _topological_order(quiver):
    n = quiver.n
    rows = quiver.rows
    indeg = [0] * n
    for i in range(n):
        for j in range(n):
            if rows[i][j] > 0:
                indeg[j] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for j in range(n):
            if rows[v][j] > 0:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
    if len(order) != n:
        raise DomainError("orientation has an oriented cycle")
    return order


def knit(quiver, window=None, direction=1):
    """Knit rightward (direction=1) or leftward (-1) from the initial slice
    until one full period is confirmed, or `window` columns are filled.

    Returns a KnittingFrame; frame.period is None when the window was fixed
    explicitly and no repetition happened inside it.
    """
    roots, h = _check_dynkin(quiver)
    bound = window if window is not None else 4 * (h + 2)
    n = quiver.n
    rows = quiver.rows
    order = _topological_order(quiver)
    if direction == -1:
        order = list(reversed(order))
    elif direction != 1:
        raise DomainError("direction must be +1 or -1")

    initial = tuple(LaurentPolynomial.variable(i, n) for i in range(n))
    slices = [initial]
    for p in range(1, bound + 1):
        prev = slices[p - 1]
        current = [None] * n
        for i in order:
            prod = LaurentPolynomial.one(n)
            for j in range(n):
                if direction == 1:
                    if rows[j][i] > 0:
                        prod = prod * current[j] ** rows[j][i]
                    if rows[i][j] > 0:
                        prod = prod * prev[j] ** (-rows[j][i])
                else:
                    if rows[i][j] > 0:
                        prod = prod * current[j] ** (-rows[j][i])
                    if rows[j][i] > 0:
                        prod = prod * prev[j] ** rows[j][i]
            value = (LaurentPolynomial.one(n) + prod).exact_div(prev[i])
            if value is None:
                raise IntegrityError("knitting division failed on a Dynkin orientation")
            current[i] = value
        current = tuple(current)
        slices.append(current)
        if current == initial:
            return KnittingFrame(quiver, slices, period=p, direction=direction)
    if window is None:
        raise DomainError(
            f"no period within {bound} columns; the input is not a Dynkin orientation"
        )
    return KnittingFrame(quiver, slices, period=None, direction=direction)


def knitting_variable_set(quiver):
    """All distinct cluster variables produced over one knitting period."""
    return knit(quiver).variable_set()


def root_bijection(quiver):
    """Bijection positive root -> non-initial cluster variable, via the
    exponents of the monomial denominators."""
    roots, _ = _check_dynkin(quiver)
    n = quiver.n
    initial = {LaurentPolynomial.variable(i, n) for i in range(n)}
    variables = knitting_variable_set(quiver) - initial
    mapping = {}
    for var in variables:
        d = denominator_vector(var, n)
        if d not in set(roots):
            raise IntegrityError(f"denominator vector {d} is not a positive root")
        if d in mapping:
            raise IntegrityError(f"two variables share the denominator {d}")
        mapping[d] = var
    if len(mapping) != len(roots):
        missing = set(roots) - set(mapping)
        raise IntegrityError(f"roots without a matching variable: {sorted(missing)}")
    return mapping
