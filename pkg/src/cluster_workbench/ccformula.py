"""Quiver representations, quiver-Grassmannian point counts over finite
fields, Euler characteristics by counting-polynomial interpolation, and the
Caldero-Chapoton map.

The Euler characteristic is realized as P(1) where P is the polynomial in q
interpolated through exact subrepresentation counts over F_p at several
primes; an extra held-out prime verifies that the count really is polynomial
(true for the rigid Dynkin-type inputs supported here).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DomainError, IntegrityError
from .laurent import LaurentPolynomial

ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class QuiverRep:
    """Dimension vector plus an integer matrix per arrow; reducible mod any
    prime.  mats[(i, j)] is a d_j x d_i matrix acting on column vectors."""

    quiver: object
    dims: tuple
    mats: dict

    def __post_init__(self):
        q = self.quiver
        if q.n != q.m:
            raise DomainError("representations live on quivers without frozen vertices")
        if q.max_multiplicity() > 1:
            raise DomainError("arrows of multiplicity > 1 carry several maps; unsupported")
        if len(self.dims) != q.n:
            raise DomainError("dimension vector length mismatch")
        for (i, j), mat in self.mats.items():
            if q.rows[i][j] <= 0:
                raise DomainError(f"no arrow {i}->{j} in the quiver")
            if len(mat) != self.dims[j] or any(len(r) != self.dims[i] for r in mat):
                raise DomainError(f"matrix for arrow {i}->{j} has wrong shape")

    def arrow_list(self):
        q = self.quiver
        return [
            (i, j)
            for i in range(q.n)
            for j in range(q.n)
            if q.rows[i][j] > 0
        ]

    def matrix(self, i, j):
        d_j, d_i = self.dims[j], self.dims[i]
        if (i, j) in self.mats:
            return self.mats[(i, j)]
        return tuple(tuple(0 for _ in range(d_i)) for _ in range(d_j))

    def to_json(self):
        return {
            "quiver": self.quiver.to_json(),
            "dims": list(self.dims),
            "mats": {
                f"{i + 1}->{j + 1}": [list(r) for r in mat]
                for (i, j), mat in self.mats.items()
            },
        }

    @classmethod
    def from_json(cls, data):
        from .quiver import IceQuiver

        quiver = IceQuiver.from_json(data["quiver"])
        dims = tuple(int(d) for d in data["dims"])
        mats = {}
        for key, rows in data["mats"].items():
            src, dst = key.split("->")
            mats[(int(src) - 1, int(dst) - 1)] = tuple(
                tuple(int(x) for x in r) for r in rows
            )
        return cls(quiver, dims, mats)


def _path_quiver_check(quiver):
    """The vertices 0..n-1 must form a path in label order (an A_n orientation)."""
    n = quiver.n
    for i in range(n):
        for j in range(n):
            b = quiver.rows[i][j]
            if b != 0 and abs(i - j) != 1:
                raise DomainError("interval modules need an orientation of A_n in path order")
            if abs(b) > 1:
                raise DomainError("interval modules need single arrows")
    for i in range(n - 1):
        if quiver.rows[i][i + 1] == 0:
            raise DomainError("underlying graph must be the full A_n path")


def interval_module(quiver, lo, hi):
    """The indecomposable I[lo,hi] of an A_n orientation (0-based, inclusive):
    one-dimensional spaces on [lo,hi], identity maps along internal arrows."""
    _path_quiver_check(quiver)
    n = quiver.n
    if not 0 <= lo <= hi < n:
        raise DomainError(f"invalid interval [{lo},{hi}] for A{n}")
    dims = tuple(1 if lo <= k <= hi else 0 for k in range(n))
    mats = {}
    for i in range(n):
        for j in range(n):
            if quiver.rows[i][j] > 0 and lo <= i <= hi and lo <= j <= hi:
                mats[(i, j)] = ((1,),)
    return QuiverRep(quiver, dims, mats)


def all_interval_modules(quiver):
    n = quiver.n
    return [
        interval_module(quiver, lo, hi)
        for lo in range(n)
        for hi in range(lo, n)
    ]


def d4_three_lines_module():
    """The D4 representation with a plane at the sink and three general lines:
    quiver 1->4, 2->4, 3->4; lines spanned by (1,0), (0,1), (1,1)."""
    from .quiver import IceQuiver

    quiver = IceQuiver.from_arrows(4, [(0, 3), (1, 3), (2, 3)])
    dims = (1, 1, 1, 2)
    mats = {
        (0, 3): ((1,), (0,)),
        (1, 3): ((0,), (1,)),
        (2, 3): ((1,), (1,)),
    }
    return QuiverRep(quiver, dims, mats)


def direct_sum(rep_a, rep_b):
    if rep_a.quiver != rep_b.quiver:
        raise DomainError("direct sum needs representations of the same quiver")
    dims = tuple(a + b for a, b in zip(rep_a.dims, rep_b.dims))
    mats = {}
    for i, j in rep_a.arrow_list():
        ma, mb = rep_a.matrix(i, j), rep_b.matrix(i, j)
        da_j, da_i = rep_a.dims[j], rep_a.dims[i]
        db_j, db_i = rep_b.dims[j], rep_b.dims[i]
        block = []
        for r in range(da_j):
            block.append(tuple(ma[r]) + (0,) * db_i)
        for r in range(db_j):
            block.append((0,) * da_i + tuple(mb[r]))
        if block:
            mats[(i, j)] = tuple(block)
    return QuiverRep(rep_a.quiver, dims, mats)


# -- linear algebra over F_p ---------------------------------------------------


def _rref(rows, p):
    """Reduced row echelon form over F_p; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def subspaces(ambient, dim, p):
    """All dim-dimensional subspaces of F_p^ambient as RREF basis tuples."""
    if dim == 0:
        yield ()
        return
    from itertools import combinations

    for pivots in combinations(range(ambient), dim):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, ambient):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * ambient for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


def _in_span(vector, basis, p):
    """Is `vector` in the row space of the RREF `basis` over F_p?"""
    v = [x % p for x in vector]
    for row in basis:
        pivot = next(i for i, x in enumerate(row) if x)
        if v[pivot]:
            f = v[pivot]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return not any(v)


def gaussian_binomial(d, e, p):
    num = 1
    den = 1
    for k in range(e):
        num *= p ** (d - k) - 1
        den *= p ** (e - k) - 1
    return num // den


def _is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def count_subreps(rep, evec, p):
    """Exact number of subrepresentations of dimension vector `evec` over F_p:
    tuples of subspaces closed under every arrow map."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    dims = rep.dims
    if len(evec) != len(dims) or any(e < 0 or e > d for e, d in zip(evec, dims)):
        raise DomainError(f"dimension vector {evec} out of range for {dims}")
    budget = 1
    for d, e in zip(dims, evec):
        budget *= gaussian_binomial(d, e, p)
    if budget > ENUMERATION_BUDGET:
        raise DomainError(
            f"subspace enumeration of size {budget} exceeds the {ENUMERATION_BUDGET} budget"
        )
    arrows = rep.arrow_list()
    vertex_choices = [list(subspaces(dims[i], evec[i], p)) for i in range(len(dims))]
    count = 0
    for combo in product(*vertex_choices):
        ok = True
        for i, j in arrows:
            mat = rep.matrix(i, j)
            for bvec in combo[i]:
                image = tuple(
                    sum(mat[r][c] * bvec[c] for c in range(len(bvec))) % p
                    for r in range(len(mat))
                )
                if any(image) and not _in_span(image, combo[j], p):
                    ok = False
                    break
                if any(image) and evec[j] == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def _first_primes(count, start_after=1):
    out = []
    candidate = max(2, start_after + 1)
    while len(out) < count:
        if _is_prime(candidate):
            out.append(candidate)
        candidate += 1
    return out


def euler_char(rep, evec, primes=None):
    """Euler characteristic of Gr_e(V) via Lagrange interpolation of the
    counting polynomial through point counts at distinct primes, evaluated at
    q = 1.  One extra prime is held out to verify polynomiality."""
    degree_bound = sum(e * (d - e) for e, d in zip(evec, rep.dims))
    needed = degree_bound + 1
    if primes is None:
        primes = _first_primes(needed + 1)
    primes = list(primes)
    if len(primes) < needed:
        raise DomainError(
            f"need at least {needed} primes for degree bound {degree_bound}"
        )
    if len(set(primes)) != len(primes):
        raise DomainError("primes must be distinct")
    if len(primes) == needed:
        primes = primes + _first_primes(1, start_after=max(primes))
    sample, holdout = primes[:needed], primes[needed]
    counts = [count_subreps(rep, evec, p) for p in sample]

    def interpolate_at(x):
        total = Fraction(0)
        for i, (xi, yi) in enumerate(zip(sample, counts)):
            term = Fraction(yi)
            for j, xj in enumerate(sample):
                if i != j:
                    term *= Fraction(x - xj, xi - xj)
            total += term
        return total

    held = interpolate_at(holdout)
    if held != count_subreps(rep, evec, holdout):
        raise IntegrityError(
            "held-out prime check failed: the point count is not polynomial "
            "(representation outside the supported scope)"
        )
    value = interpolate_at(1)
    if value.denominator != 1:
        raise IntegrityError("interpolated Euler characteristic is not an integer")
    return int(value)


def caldero_chapoton(rep, primes=None):
    """The Caldero-Chapoton Laurent polynomial of a representation:
    sum over 0 <= e <= d of chi(Gr_e(V)) x^(arrow exponents), divided by x^d."""
    q = rep.quiver
    n = q.n
    dims = rep.dims
    arrows = rep.arrow_list()
    total = LaurentPolynomial.zero(n)
    for evec in product(*(range(d + 1) for d in dims)):
        chi = euler_char(rep, evec, primes)
        if chi == 0:
            continue
        exps = [0] * n
        for i, j in arrows:
            exps[i] += dims[j] - evec[j]
            exps[j] += evec[i]
        total = total + LaurentPolynomial.monomial(tuple(exps), chi)
    return total.shift(tuple(-d for d in dims))
