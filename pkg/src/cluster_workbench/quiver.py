"""Ice quivers as integer exchange matrices, mutation and canonical forms.

An ice quiver with n mutable and m-n frozen vertices is stored as the m x n
integer matrix B with b_ij = #arrows i->j minus #arrows j->i.  Loops and
2-cycles are unrepresentable by construction, and no entries between two
frozen vertices are kept.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from . import kernel
from .errors import DomainError


def _lcm(a, b):
    return a * b // gcd(a, b)


class IceQuiver:
    """Immutable ice quiver; `rows` is the m x n matrix as a tuple of tuples."""

    __slots__ = ("n", "m", "rows", "names", "_key")

    def __init__(self, n, m, rows, names=None, check=True):
        self.n = n
        self.m = m
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        self.names = tuple(names) if names else None
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        if not 1 <= self.n <= self.m:
            raise DomainError(f"need 1 <= n <= m, got n={self.n}, m={self.m}")
        if len(self.rows) != self.m or any(len(r) != self.n for r in self.rows):
            raise DomainError(f"matrix must be {self.m}x{self.n}")
        if self.names and len(self.names) != self.m:
            raise DomainError("names must label every vertex")
        for i in range(self.n):
            if self.rows[i][i] != 0:
                raise DomainError("principal diagonal must be zero (no loops)")
        if self.symmetrizer() is None:
            raise DomainError("principal part is not skew-symmetrizable")

    # -- basic structure ---------------------------------------------------

    @classmethod
    def from_arrows(cls, n, arrows, m=None, names=None):
        """Build from 0-based (source, target[, multiplicity]) triples."""
        m = m or n
        mat = [[0] * n for _ in range(m)]
        for arrow in arrows:
            i, j, *rest = arrow
            mult = rest[0] if rest else 1
            if i >= n and j >= n:
                raise DomainError("arrows between frozen vertices are not representable")
            if j < n:
                mat[i][j] += mult
            if i < n:
                mat[j][i] -= mult
        return cls(n, m, mat, names=names)

    def principal_part(self):
        return tuple(self.rows[i] for i in range(self.n))

    def full_matrix(self):
        """Antisymmetric m x m extension (frozen-frozen block is zero)."""
        full = []
        for i in range(self.m):
            row = list(self.rows[i]) + [0] * (self.m - self.n)
            full.append(row)
        for i in range(self.n):
            for j in range(self.n, self.m):
                full[i][j] = -self.rows[j][i]
        return tuple(tuple(r) for r in full)

    def arrows(self):
        """All arrows as (source, target, multiplicity), 0-based."""
        out = []
        full = self.full_matrix()
        for i in range(self.m):
            for j in range(self.m):
                if full[i][j] > 0:
                    out.append((i, j, full[i][j]))
        return out

    def max_multiplicity(self):
        return max((abs(x) for row in self.rows for x in row), default=0)

    def is_acyclic(self):
        """No oriented cycles through mutable/frozen arrows."""
        full = self.full_matrix()
        state = [0] * self.m

        def visit(v):
            state[v] = 1
            for w in range(self.m):
                if full[v][w] > 0:
                    if state[w] == 1 or (state[w] == 0 and visit(w)):
                        return True
            state[v] = 2
            return False

        return not any(state[v] == 0 and visit(v) for v in range(self.m))

    def mutable_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in range(self.n):
                if w not in seen and self.rows[v][w] != 0:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def symmetrizer(self):
        """Positive integers d with d_i*b_ij = -d_j*b_ji on the principal
        part, or None when no such diagonal exists."""
        n = self.n
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    bij, bji = self.rows[i][j], self.rows[j][i]
                    if bij == 0 and bji == 0:
                        continue
                    if bij == 0 or bji == 0 or (bij > 0) == (bji > 0):
                        return None
                    val = d[i] * Fraction(bij, -bji)
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        return None
        denom = 1
        for x in d:
            denom = _lcm(denom, x.denominator)
        ints = [int(x * denom) for x in d]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return tuple(x // g for x in ints)

    def is_skew_symmetric(self):
        return all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.n)
            for j in range(self.n)
        )

    def __eq__(self, other):
        return (
            isinstance(other, IceQuiver)
            and self.n == other.n
            and self.m == other.m
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.m, self.rows))

    def __repr__(self):
        arrows = ", ".join(
            f"{self.label(i)}->{self.label(j)}" + (f" x{k}" if k > 1 else "")
            for i, j, k in self.arrows()
        )
        return f"IceQuiver(n={self.n}, m={self.m}; {arrows})"

    def label(self, i):
        if self.names:
            return self.names[i]
        return str(i + 1)

    # -- canonical form ------------------------------------------------------

    def canonical_key(self):
        """Bytes invariant under relabelings mapping mutable to mutable and
        frozen to frozen."""
        if self._key is None:
            colors = [0] * self.n + [1] * (self.m - self.n)
            flat = kernel.canonical_key(self.full_matrix(), colors)
            self._key = canonical_bytes(self.n, self.m, flat)
        return self._key

    def canonical_labelings(self):
        """All permutations (new position -> old vertex) realizing the
        canonical form."""
        colors = [0] * self.n + [1] * (self.m - self.n)
        _, perms = kernel.canonical_all(self.full_matrix(), colors)
        return perms

    def canonical_representative(self):
        """The relabeled quiver whose serialization is the canonical key."""
        perm = self.canonical_labelings()[0]
        return self.permuted(perm)

    def permuted(self, perm):
        """Relabeled quiver: new vertex p is old vertex perm[p]."""
        full = self.full_matrix()
        rows = [
            [full[perm[i]][perm[j]] for j in range(self.n)] for i in range(self.m)
        ]
        names = None
        if self.names:
            names = [self.names[perm[i]] for i in range(self.m)]
        return IceQuiver(self.n, self.m, rows, names=names, check=False)

    def is_isomorphic_to(self, other):
        return (
            self.n == other.n
            and self.m == other.m
            and self.canonical_key() == other.canonical_key()
        )

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        entries = []
        for i in range(self.m):
            for j in range(self.n):
                b = self.rows[i][j]
                if b == 0:
                    continue
                # the mirror of a skew pair is redundant; valued pairs and
                # frozen rows are written out explicitly
                if 0 < b or i >= self.n or self.rows[j][i] != -b:
                    entries.append([i + 1, j + 1, b])
        data = {
            "n": self.n,
            "m": self.m,
            "entries": entries,
            "symmetrizer": list(self.symmetrizer()),
        }
        if self.names:
            data["names"] = list(self.names)
        return data

    @classmethod
    def from_json(cls, data):
        n, m = int(data["n"]), int(data["m"])
        mat = [[0] * n for _ in range(m)]
        provided = set()
        for i, j, b in data["entries"]:
            i, j, b = int(i), int(j), int(b)
            if not (1 <= i <= m and 1 <= j <= n):
                raise DomainError(f"entry ({i},{j}) out of range")
            mat[i - 1][j - 1] = b
            provided.add((i - 1, j - 1))
        # fill in the skew mirror of mutable pairs given one-sidedly; valued
        # pairs list both entries explicitly
        for i, j in list(provided):
            if i < n and (j, i) not in provided:
                mat[j][i] = -mat[i][j]
        quiver = cls(n, m, mat, names=data.get("names"))
        if "symmetrizer" in data and data["symmetrizer"]:
            given = tuple(int(x) for x in data["symmetrizer"])
            if not _symmetrizer_compatible(quiver, given):
                raise DomainError("given symmetrizer does not symmetrize the principal part")
        return quiver

    def to_text(self):
        lines = []
        if self.names:
            lines.extend(f"# {name}" for name in self.names)
        lines.append(f"{self.n} {self.m}")
        for i in range(self.m):
            for j in range(self.n):
                b = self.rows[i][j]
                if b > 0 or (b < 0 and i >= self.n):
                    lines.append(f"{i + 1} {j + 1} {b}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        names = []
        header = None
        entries = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                names.append(line[1:].strip())
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 2:
                    raise DomainError(f"expected 'n m' header, got {line!r}")
                header = (int(parts[0]), int(parts[1]))
            else:
                if len(parts) != 3:
                    raise DomainError(f"expected 'i j b' entry, got {line!r}")
                entries.append([int(parts[0]), int(parts[1]), int(parts[2])])
        if header is None:
            raise DomainError("empty quiver file")
        data = {"n": header[0], "m": header[1], "entries": entries}
        if names:
            data["names"] = names
        return cls.from_json(data)

    @classmethod
    def loads(cls, text):
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_text(text)


def _symmetrizer_compatible(quiver, d):
    """Accept d if diag(d)*B or B*diag(d) is skew-symmetric on the principal part."""
    if len(d) != quiver.n or any(x <= 0 for x in d):
        return False
    rows = quiver.rows
    n = quiver.n
    left = all(d[i] * rows[i][j] == -d[j] * rows[j][i] for i in range(n) for j in range(n))
    right = all(rows[i][j] * d[j] == -rows[j][i] * d[i] for i in range(n) for j in range(n))
    return left or right


def canonical_bytes(n, m, flat):
    payload = f"{n};{m};" + ",".join(map(str, flat))
    return payload.encode("ascii")


class CanonicalKey:
    """Wrapper for canonical serializations; equal keys <=> isomorphic quivers."""

    __slots__ = ("bytes",)

    def __init__(self, data):
        self.bytes = bytes(data)

    def __eq__(self, other):
        return isinstance(other, CanonicalKey) and self.bytes == other.bytes

    def __hash__(self):
        return hash(self.bytes)

    def __repr__(self):
        return f"CanonicalKey({self.bytes[:40]!r}...)"


def canonical_form(quiver):
    return CanonicalKey(quiver.canonical_key())


def mutate_matrix(quiver, k):
    """Fomin-Zelevinsky matrix mutation at the mutable vertex k (0-based)."""
    if not 0 <= k < quiver.n:
        raise DomainError(
            f"mutation index {k} out of range: vertex must be mutable (0..{quiver.n - 1})"
        )
    rows = quiver.rows
    n, m = quiver.n, quiver.m
    new = [[0] * n for _ in range(m)]
    for i in range(m):
        b_ik = rows[i][k]
        for j in range(n):
            b = rows[i][j]
            if i == k or j == k:
                new[i][j] = -b
            else:
                b_kj = rows[k][j]
                if b_ik > 0 and b_kj > 0:
                    new[i][j] = b + b_ik * b_kj
                elif b_ik < 0 and b_kj < 0:
                    new[i][j] = b - b_ik * b_kj
                else:
                    new[i][j] = b
    return IceQuiver(quiver.n, quiver.m, new, names=quiver.names, check=False)


def mutate_sequence(quiver, ks):
    for k in ks:
        quiver = mutate_matrix(quiver, k)
    return quiver
