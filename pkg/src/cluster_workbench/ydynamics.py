"""Y-seed mutation in three coupled layers: tropical y-monomials (c-vectors),
F-polynomials, and non-tropical Y rational functions, plus the separation
identity Y_j = y_j * prod_i F_i^{b_ij} linking them.

Convention: b_ij > 0 means arrows i -> j.  Mutating at vertex i updates the
other label j through the row entry b_ij in the tropical and Y layers, and
through the column entries b_ji in the F-polynomial recursion; this pairing
is forced by requiring the separation identity to hold along every path (and
is pinned by the worked 1->2 example in the tests).
"""

from __future__ import annotations

from .errors import DomainError, IntegrityError
from .laurent import FactoredRational, LaurentPolynomial
from .quiver import IceQuiver, mutate_matrix


def tropical_semifield_add_one(monomial):
    """m (+) 1 in the tropical semifield: keep exactly the factors of the
    Laurent monomial m with negative exponents."""
    if not monomial.is_monomial():
        raise DomainError("tropical addition of 1 is defined for monomials only")
    (exps, coeff), = monomial.terms.items()
    return LaurentPolynomial.monomial(tuple(min(e, 0) for e in exps), 1)


class YSeed:
    """Quiver (principal part only) + c-matrix + F-polynomials + Y-variables.

    c[l][j] is the exponent of y_l in the tropical variable y_{j,t}; at the
    initial vertex c is the identity, every F is 1 and Y_j = y_j.
    """

    __slots__ = ("quiver", "c", "fpolys", "yvars")

    def __init__(self, quiver, c, fpolys, yvars):
        if quiver.n != quiver.m:
            raise DomainError("Y-seeds are defined on quivers without frozen vertices")
        self.quiver = quiver
        self.c = tuple(tuple(row) for row in c)
        self.fpolys = tuple(fpolys)
        self.yvars = tuple(yvars)

    @classmethod
    def initial(cls, quiver):
        n = quiver.n
        ident = tuple(tuple(1 if l == j else 0 for j in range(n)) for l in range(n))
        ones = tuple(LaurentPolynomial.one(n) for _ in range(n))
        gens = tuple(
            FactoredRational.from_poly(LaurentPolynomial.variable(j, n))
            for j in range(n)
        )
        return cls(quiver, ident, ones, gens)

    @property
    def n(self):
        return self.quiver.n

    def tropical_monomial(self, j):
        """y_{j,t} as a Laurent monomial in y_1..y_n."""
        exps = tuple(self.c[l][j] for l in range(self.n))
        return LaurentPolynomial.monomial(exps, 1)

    def __eq__(self, other):
        return (
            isinstance(other, YSeed)
            and self.quiver == other.quiver
            and self.c == other.c
            and self.fpolys == other.fpolys
            and all(a.equals(b) for a, b in zip(self.yvars, other.yvars))
        )

    def layers_equal_exact(self, other):
        """(quiver, c, F, Y) equality with Y compared by cross-multiplication."""
        return self == other

    def to_json(self):
        return {
            "quiver": self.quiver.to_json(),
            "c": [list(row) for row in self.c],
            "f": [p.to_json_terms() for p in self.fpolys],
            "y": [y.to_json() for y in self.yvars],
        }

    @classmethod
    def from_json(cls, data):
        quiver = IceQuiver.from_json(data["quiver"])
        n = quiver.n
        c = [[int(x) for x in row] for row in data["c"]]
        fpolys = [LaurentPolynomial.from_json_terms(n, t) for t in data["f"]]
        yvars = [FactoredRational.from_json(n, y) for y in data["y"]]
        return cls(quiver, c, fpolys, yvars)

    def __repr__(self):
        names = [f"y{l+1}" for l in range(self.n)]
        ys = ", ".join(y.format(names) for y in self.yvars)
        return f"YSeed({ys})"


def mutate_y_seed(ys, i):
    """Mutate all three layers at vertex i (0-based)."""
    n = ys.n
    if not 0 <= i < n:
        raise DomainError(f"vertex {i} out of range")
    rows = ys.quiver.rows
    c = [list(row) for row in ys.c]

    # tropical layer: y_i inverts; y_j picks up y_i^[b_ij]+ (y_i (+) 1)^-b_ij
    new_c = [[0] * n for _ in range(n)]
    for l in range(n):
        new_c[l][i] = -c[l][i]
    for j in range(n):
        if j == i:
            continue
        b = rows[i][j]
        for l in range(n):
            new_c[l][j] = c[l][j] + max(b, 0) * c[l][i] - b * min(c[l][i], 0)

    # F-polynomial layer (column entries b_ji)
    pos = LaurentPolynomial.one(n)
    neg = LaurentPolynomial.one(n)
    pos_exps = [max(c[l][i], 0) for l in range(n)]
    neg_exps = [max(-c[l][i], 0) for l in range(n)]
    pos = pos * LaurentPolynomial.monomial(tuple(pos_exps), 1)
    neg = neg * LaurentPolynomial.monomial(tuple(neg_exps), 1)
    for j in range(n):
        b = rows[j][i]
        if b > 0:
            pos = pos * ys.fpolys[j] ** b
        elif b < 0:
            neg = neg * ys.fpolys[j] ** (-b)
    new_fi = (pos + neg).exact_div(ys.fpolys[i])
    if new_fi is None:
        raise IntegrityError("F-polynomial division failed")
    fpolys = list(ys.fpolys)
    fpolys[i] = new_fi

    # Y layer (row entries b_ij)
    yvars = list(ys.yvars)
    yi = ys.yvars[i]
    yi_plus_1 = yi.plus_one()
    for j in range(n):
        if j == i:
            continue
        b = rows[i][j]
        if b == 0:
            continue
        factor = yi.power(max(b, 0)).times(yi_plus_1.power(-b))
        yvars[j] = ys.yvars[j].times(factor)
    yvars[i] = yi.inverse()

    return YSeed(mutate_matrix(ys.quiver, i), new_c, fpolys, yvars)


def mutate_y_seed_sequence(ys, path):
    for i in path:
        ys = mutate_y_seed(ys, i)
    return ys


def y_from_f(ys):
    """Recompute the Y layer from (tropical, F, B) via the separation identity
    Y_j = y_{j,t} * prod_i F_i^{b_ij}; an independent check on the mutated Y."""
    n = ys.n
    rows = ys.quiver.rows
    out = []
    for j in range(n):
        val = FactoredRational.from_poly(ys.tropical_monomial(j))
        for i in range(n):
            b = rows[i][j]
            if b:
                val = val.times(FactoredRational.from_poly(ys.fpolys[i]).power(b))
        out.append(val)
    return tuple(out)


def verify_separation_identity(ys):
    """True when the directly mutated Y layer equals the recomputed one."""
    return all(a.equals(b) for a, b in zip(ys.yvars, y_from_f(ys)))
