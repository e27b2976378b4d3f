import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cluster_workbench.errors import DomainError, IntegrityError
from cluster_workbench.laurent import (
    FactoredRational,
    LaurentPolynomial,
    pack_exponents,
    unpack_exponents,
)


def L(nvars, terms):
    return LaurentPolynomial.from_terms(nvars, terms)


x1 = LaurentPolynomial.variable(0, 2)
x2 = LaurentPolynomial.variable(1, 2)


def test_packing_roundtrip():
    for exps in [(0, 0, 0), (1, -1, 5), (-37, 2, 0), (1000, -1000, 999)]:
        assert unpack_exponents(pack_exponents(exps), 3) == exps


def test_zero_terms_dropped():
    p = L(2, {(1, 0): 1, (0, 1): 0})
    assert p.term_count() == 1
    assert p == x1


def test_arithmetic_basics():
    assert x1 + x2 - x1 == x2
    assert (x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2
    assert (x1 + 1) ** 3 == x1**3 + 3 * x1**2 + 3 * x1 + 1
    assert x1 * 0 == LaurentPolynomial.zero(2)
    assert -(-x1) == x1


def test_negative_exponents():
    inv = L(2, {(-1, 0): 1})
    assert x1 * inv == LaurentPolynomial.one(2)
    assert (x1 + x2).exact_div(x1) == L(2, {(0, 0): 1, (-1, 1): 1})


def test_monomial_power_fast_path():
    m = L(2, {(2, -3): 5})
    assert m**3 == L(2, {(6, -9): 125})


def test_exact_division_success_and_failure():
    p = (x1 + 1) * (x2 + 3) * (x1 * x2 + 5)
    assert p.exact_div(x2 + 3) == (x1 + 1) * (x1 * x2 + 5)
    assert p.exact_div(x1 + 2) is None
    assert (2 * x1).exact_div(L(2, {(0, 0): 2})) == x1
    assert (3 * x1 + 1).exact_div(L(2, {(0, 0): 2})) is None  # integer coefficients


def test_division_by_zero():
    with pytest.raises(DomainError):
        x1.exact_div(LaurentPolynomial.zero(2))


def test_div_exact_raises_integrity():
    with pytest.raises(IntegrityError):
        (x1 + 1).div_exact(x2 + 1)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
            st.integers(-9, 9),
        ),
        max_size=6,
    ),
    st.lists(
        st.tuples(
            st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
            st.integers(-9, 9),
        ),
        min_size=1,
        max_size=6,
    ),
)
def test_division_inverts_multiplication(terms_a, terms_b):
    a = LaurentPolynomial.zero(2)
    for e, c in terms_a:
        a = a + LaurentPolynomial.monomial(e, c)
    b = LaurentPolynomial.zero(2)
    for e, c in terms_b:
        b = b + LaurentPolynomial.monomial(e, c)
    if not b:
        return
    assert (a * b).exact_div(b) == a


def test_min_exponents_and_denominator():
    p = L(2, {(1, -2): 3, (-1, 0): 1})
    assert p.min_exponents() == (-1, -2)
    assert p.denominator_exponents() == (1, 2)
    assert LaurentPolynomial.zero(2).min_exponents() == (0, 0)


def test_eval_mod():
    p = x1**2 + x2
    assert p.eval_mod((3, 4), 7) == (9 + 4) % 7
    inv = L(2, {(-1, 0): 1})
    assert inv.eval_mod((3, 1), 7) == pow(3, -1, 7)


def test_format():
    p = (x1 + 1 + x2).exact_div(x1 * x2)
    assert p.format() == "(x1 + x2 + 1)/(x1*x2)"
    assert x1.format() == "x1"
    assert LaurentPolynomial.zero(2).format() == "0"
    assert L(2, {(-2, 0): 1}).format() == "1/(x1^2)"


def test_json_roundtrip():
    p = (x1 + 2 * x2) * L(2, {(-1, -1): 1})
    data = p.to_json_terms()
    assert LaurentPolynomial.from_json_terms(2, data) == p
    assert all(isinstance(c, str) for _, c in data)


def test_factored_rational_basics():
    y = FactoredRational.from_poly(x1)
    z = y.plus_one()  # (x1 + 1)/1
    assert z.numerator_poly() == x1 + 1
    assert y.times(y.inverse()).equals(FactoredRational.one(2))
    assert y.power(3).equals(FactoredRational(2, {x1**3: 1}))
    assert y.power(-2).denominator_poly() == x1**2


def test_factored_rational_cancellation_via_division():
    # (x1+1)(x2+1) / (x1+1) reduces without a GCD
    num = (x1 + 1) * (x2 + 1)
    frac = FactoredRational(2, {num: 1}, {x1 + 1: 1})
    assert not frac.den
    assert frac.numerator_poly() == x2 + 1


def test_factored_rational_equality_cross_multiplication():
    a = FactoredRational(2, {x1 + 1: 1}, {x2: 1})
    b = FactoredRational(2, {(x1 + 1) * x1: 1}, {x2 * x1: 1})
    assert a.equals(b)
    c = FactoredRational(2, {x1 + 2: 1}, {x2: 1})
    assert not a.equals(c)


def test_factored_rational_eval_mod():
    frac = FactoredRational(2, {x1 + 1: 1}, {x2: 1})
    assert frac.eval_mod((3, 5), 11) == 4 * pow(5, -1, 11) % 11


def test_factored_rational_json_roundtrip():
    frac = FactoredRational(2, {x1 + 1: 2}, {x2: 1})
    again = FactoredRational.from_json(2, frac.to_json())
    assert frac.equals(again)
