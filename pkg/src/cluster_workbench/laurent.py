"""Sparse multivariate Laurent polynomials over arbitrary-precision integers.

Terms map packed exponent keys to nonzero integer coefficients.  An exponent
vector (e_1, ..., e_m) is packed into a single integer with one 48-bit field
per variable, biased by 2^47 so negative exponents pack cleanly:

    key = sum_i (e_i + 2^47) << (48*i)

Multiplying monomials is then a single integer addition (minus the constant
bias), dividing is a subtraction, and "all exponents nonnegative" is one bit
mask - which is what makes exact division and the mutation engine fast
enough in pure Python.  Exponents stay far below the 2^47 field bound for
every workload in this package.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .errors import DomainError, IntegrityError

FIELD_BITS = 48
FIELD_BIAS = 1 << (FIELD_BITS - 1)
FIELD_MASK = (1 << FIELD_BITS) - 1

_BIAS_CACHE = {}


def _bias(nvars):
    """The packed key of the zero exponent vector (also the sign-bit mask)."""
    key = _BIAS_CACHE.get(nvars)
    if key is None:
        key = 0
        for i in range(nvars):
            key |= FIELD_BIAS << (FIELD_BITS * i)
        _BIAS_CACHE[nvars] = key
    return key


def pack_exponents(exps):
    key = 0
    for i, e in enumerate(exps):
        key |= (e + FIELD_BIAS) << (FIELD_BITS * i)
    return key


def unpack_exponents(key, nvars):
    return tuple(
        ((key >> (FIELD_BITS * i)) & FIELD_MASK) - FIELD_BIAS for i in range(nvars)
    )


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars, packed_terms=None):
        self.nvars = nvars
        self._t = {k: c for k, c in packed_terms.items() if c} if packed_terms else {}
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_terms(cls, nvars, terms):
        """terms: mapping exponent tuple -> coefficient."""
        packed = {}
        for exps, coeff in terms.items():
            if len(exps) != nvars:
                raise DomainError(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                )
            if coeff:
                packed[pack_exponents(exps)] = coeff
        return cls(nvars, packed)

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        if value == 0:
            return cls(nvars)
        return cls(nvars, {_bias(nvars): value})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, index, nvars):
        """Generator x_{index+1}; index is 0-based."""
        if not 0 <= index < nvars:
            raise DomainError(f"variable index {index} out of range for {nvars} variables")
        return cls(nvars, {_bias(nvars) + (1 << (FIELD_BITS * index)): 1})

    @classmethod
    def monomial(cls, exps, coeff=1):
        if coeff == 0:
            return cls(len(exps))
        return cls(len(exps), {pack_exponents(exps): coeff})

    # -- term access --------------------------------------------------------

    @property
    def terms(self):
        """Exponent-tuple view of the terms (built on demand; boundary use)."""
        n = self.nvars
        return {unpack_exponents(k, n): c for k, c in self._t.items()}

    def packed_items(self):
        return self._t.items()

    def term_count(self):
        return len(self._t)

    def sorted_packed(self):
        return tuple(sorted(self._t.items()))

    # -- ring structure ---------------------------------------------------

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPolynomial)
            and self.nvars == other.nvars
            and self._t == other._t
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(sorted(self._t.items()))))
        return self._hash

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self._t.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._t)
        get = out.get
        for e, c in other._t.items():
            s = get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPolynomial(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._t or not other._t:
            return LaurentPolynomial.zero(self.nvars)
        bias = _bias(self.nvars)
        a, b = self._t, other._t
        if len(a) == 1:
            (ka, ca), = a.items()
            shift = ka - bias
            return LaurentPolynomial(
                self.nvars, {kb + shift: cb * ca for kb, cb in b.items()}
            )
        if len(b) == 1:
            (kb, cb), = b.items()
            shift = kb - bias
            return LaurentPolynomial(
                self.nvars, {ka + shift: ca * cb for ka, ca in a.items()}
            )
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for ea, ca in a.items():
            sa = ea - bias
            for eb, cb in b.items():
                e = sa + eb
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise DomainError("negative powers of polynomials are not defined; invert monomials instead")
        if k == 0:
            return LaurentPolynomial.one(self.nvars)
        if len(self._t) == 1:
            (key, coeff), = self._t.items()
            return LaurentPolynomial(
                self.nvars, {(key - _bias(self.nvars)) * k + _bias(self.nvars): coeff ** k}
            )
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise DomainError("variable counts differ")
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(self.nvars, other)
        return NotImplemented

    # -- structure queries ------------------------------------------------

    def is_monomial(self):
        return len(self._t) == 1

    def is_one(self):
        return self._t == {_bias(self.nvars): 1}

    def min_exponents(self):
        """Componentwise minimum exponent over all terms (zero poly -> zeros)."""
        if not self._t:
            return (0,) * self.nvars
        mins = None
        for key in self._t:
            exps = unpack_exponents(key, self.nvars)
            mins = exps if mins is None else tuple(map(min, mins, exps))
        return mins

    def denominator_exponents(self):
        """Exponents of the monomial denominator of the reduced fraction form."""
        return tuple(max(0, -e) for e in self.min_exponents())

    def shift(self, exps):
        """Multiply by the monomial with the given exponent vector."""
        delta = pack_exponents(exps) - _bias(self.nvars)
        return LaurentPolynomial(self.nvars, {k + delta: c for k, c in self._t.items()})

    # -- exact division ---------------------------------------------------

    def exact_div(self, divisor):
        """Exact quotient self/divisor, or None when the division is inexact.

        Operands are shifted to ordinary polynomials so the lex loop
        terminates; packed keys make the monomial-divisibility test a single
        mask comparison.
        """
        divisor = self._coerce(divisor)
        if not divisor._t:
            raise DomainError("division by zero")
        if not self._t:
            return LaurentPolynomial.zero(self.nvars)
        bias = _bias(self.nvars)

        if len(divisor._t) == 1:
            (de, dc), = divisor._t.items()
            shift = de - bias
            out = {}
            for e, c in self._t.items():
                q, r = divmod(c, dc)
                if r:
                    return None
                out[e - shift] = q
            return LaurentPolynomial(self.nvars, out)

        smin = pack_exponents(self.min_exponents())
        dmin = pack_exponents(divisor.min_exponents())
        num = {k - smin + bias: c for k, c in self._t.items()}
        den = {k - dmin + bias: c for k, c in divisor._t.items()}

        dlead = max(den)
        dlc = den[dlead]
        den_rest = [(e - dlead, c) for e, c in den.items() if e != dlead]
        quot = {}
        get = num.get
        while num:
            lead = max(num)
            q, r = divmod(num[lead], dlc)
            t = lead - dlead + bias
            # all quotient exponents must stay >= 0: every biased field keeps
            # its top bit exactly when e_i >= 0
            if r or (t & bias) != bias:
                return None
            quot[t] = q
            del num[lead]
            for off, c in den_rest:
                key = lead + off
                s = get(key, 0) - q * c
                if s:
                    num[key] = s
                else:
                    del num[key]
        shift_back = smin - dmin  # unbiased field-wise delta
        return LaurentPolynomial(
            self.nvars, {k + shift_back: c for k, c in quot.items()}
        )

    def div_exact(self, divisor):
        """Exact division that raises IntegrityError on failure."""
        q = self.exact_div(divisor)
        if q is None:
            raise IntegrityError("exact Laurent division failed; this contradicts a guaranteed invariant")
        return q

    # -- evaluation ---------------------------------------------------------

    def eval_mod(self, point, p):
        """Evaluate at a tuple of residues modulo the prime p."""
        if len(point) != self.nvars:
            raise DomainError("evaluation point has wrong length")
        total = 0
        for key, c in self._t.items():
            v = c % p
            for x, k in zip(point, unpack_exponents(key, self.nvars)):
                if k:
                    v = v * pow(x, k, p) % p
            total = (total + v) % p
        return total

    def eval_fraction(self, point):
        """Exact evaluation at a tuple of Fractions (for small oracle checks)."""
        total = Fraction(0)
        for key, c in self._t.items():
            v = Fraction(c)
            for x, k in zip(point, unpack_exponents(key, self.nvars)):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- serialization ------------------------------------------------------

    def to_json_terms(self):
        return [[list(e), str(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json_terms(cls, nvars, data):
        terms = {}
        for exps, coeff in data:
            terms[tuple(int(x) for x in exps)] = int(coeff)
        return cls.from_terms(nvars, terms)

    def format(self, names=None):
        """Human-readable fraction form: numerator over monomial denominator."""
        if not self._t:
            return "0"
        names = names or [f"x{i+1}" for i in range(self.nvars)]
        den = self.denominator_exponents()
        num = self.shift(den)

        def fmt_mono(exps, coeff):
            parts = []
            for name, k in zip(names, exps):
                if k == 1:
                    parts.append(name)
                elif k:
                    parts.append(f"{name}^{k}")
            body = "*".join(parts)
            if not body:
                return str(coeff)
            if coeff == 1:
                return body
            if coeff == -1:
                return f"-{body}"
            return f"{coeff}*{body}"

        terms = [fmt_mono(e, c) for e, c in sorted(num.terms.items(), reverse=True)]
        num_str = " + ".join(terms).replace("+ -", "- ")
        if not any(den):
            return num_str
        den_str = fmt_mono(den, 1)
        if len(num._t) > 1:
            return f"({num_str})/({den_str})"
        return f"{num_str}/({den_str})"

    def __repr__(self):
        return f"LaurentPolynomial({self.format()})"


def parse_coeff_string(s):
    return int(s)


def _reduce_multisets(left, right):
    """Cancel between two factor multisets: identical factors by hashing,
    then exact-division splits (a factor divisible by one on the other side
    is replaced by the quotient).  No general GCD: the factors produced by
    Y-variable mutation are products of F-polynomials and monomials, which
    exact division recovers."""
    left = Counter({f: k for f, k in left.items() if k and not f.is_one()})
    right = Counter({f: k for f, k in right.items() if k and not f.is_one()})
    common = left & right
    if common:
        left -= common
        right -= common

    def try_reduce(a, b):
        """One division split of a factor of `a` by a factor of `b`."""
        for g in sorted(b, key=lambda p: p.term_count()):
            if g.term_count() < 2:
                continue
            for f in sorted(a, key=lambda p: -p.term_count()):
                if f.term_count() < g.term_count():
                    break
                q = f.exact_div(g)
                if q is None:
                    continue
                k = min(a[f], b[g])
                a[f] -= k
                b[g] -= k
                if not a[f]:
                    del a[f]
                if not b[g]:
                    del b[g]
                if not q.is_one():
                    a[q] += k
                return True
        return False

    while try_reduce(left, right) or try_reduce(right, left):
        pass
    return left, right


class FactoredRational:
    """Rational function kept as multisets of polynomial factors.

    Numerator and denominator are Counters over LaurentPolynomial factors.
    Keeping the factored shape lets the Y-variable mutation cancel repeated
    (1 + Y) factors by hashing plus exact division instead of polynomial
    GCDs; equality is decided by cross-multiplication after cancellation.
    """

    __slots__ = ("nvars", "num", "den")

    def __init__(self, nvars, num=None, den=None):
        self.nvars = nvars
        self.num = Counter(num or {})
        self.den = Counter(den or {})
        self._cancel()

    @classmethod
    def from_poly(cls, poly):
        return cls(poly.nvars, {poly: 1})

    @classmethod
    def one(cls, nvars):
        return cls(nvars)

    def _cancel(self):
        num, den = _reduce_multisets(self.num, self.den)
        self.num = num
        self.den = den

    def times(self, other):
        if other.nvars != self.nvars:
            raise DomainError("variable counts differ")
        return FactoredRational(self.nvars, self.num + other.num, self.den + other.den)

    def inverse(self):
        return FactoredRational(self.nvars, self.den, self.num)

    def power(self, k):
        if k == 0:
            return FactoredRational.one(self.nvars)
        num, den = (self.num, self.den) if k > 0 else (self.den, self.num)
        k = abs(k)
        return FactoredRational(
            self.nvars,
            Counter({f: m * k for f, m in num.items()}),
            Counter({f: m * k for f, m in den.items()}),
        )

    def plus_one(self):
        """Return self + 1 as a new factored rational: (num_prod + den_prod)/den."""
        s = self.numerator_poly() + self.denominator_poly()
        return FactoredRational(self.nvars, {s: 1}, dict(self.den))

    def numerator_poly(self):
        p = LaurentPolynomial.one(self.nvars)
        for f, k in self.num.items():
            p = p * f ** k
        return p

    def denominator_poly(self):
        p = LaurentPolynomial.one(self.nvars)
        for f, k in self.den.items():
            p = p * f ** k
        return p

    def equals(self, other):
        """Exact equality by cross-multiplication (after factor cancellation)."""
        if other.nvars != self.nvars:
            return False
        left = self.num + other.den
        right = other.num + self.den
        left, right = _reduce_multisets(left, right)
        lp = LaurentPolynomial.one(self.nvars)
        for f, k in left.items():
            lp = lp * f ** k
        rp = LaurentPolynomial.one(self.nvars)
        for f, k in right.items():
            rp = rp * f ** k
        return lp == rp

    def eval_mod(self, point, p):
        num = 1
        for f, k in self.num.items():
            num = num * pow(f.eval_mod(point, p), k, p) % p
        den = 1
        for f, k in self.den.items():
            den = den * pow(f.eval_mod(point, p), k, p) % p
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return num * pow(den, -1, p) % p

    def to_json(self):
        return {
            "num": [[f.to_json_terms(), k] for f, k in sorted(self.num.items(), key=str)],
            "den": [[f.to_json_terms(), k] for f, k in sorted(self.den.items(), key=str)],
        }

    @classmethod
    def from_json(cls, nvars, data):
        num = {LaurentPolynomial.from_json_terms(nvars, t): k for t, k in data["num"]}
        den = {LaurentPolynomial.from_json_terms(nvars, t): k for t, k in data["den"]}
        return cls(nvars, num, den)

    def format(self, names=None):
        num = self.numerator_poly().format(names)
        if not self.den:
            return num
        den = self.denominator_poly().format(names)
        return f"({num})/({den})"

    def __repr__(self):
        return f"FactoredRational({self.format()})"
