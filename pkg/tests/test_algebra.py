import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weyl import (
    EXPONENTIAL,
    ArityError,
    WeylElement,
    add,
    commutator,
    degree,
    derivation_apply,
    derivative,
    equal,
    generator,
    inner_derivation,
    mul,
    normalize,
    one,
    power,
    random_element,
    scalar,
    zero,
)

x = generator(0)
d = derivative(0)


def element(terms, arity=1, rule="weyl"):
    return WeylElement(arity, terms, rule)


@st.composite
def elements(draw, arity=None, max_exp=2, max_terms=3):
    n = draw(st.integers(1, 4)) if arity is None else arity
    mono = st.tuples(*[st.integers(0, max_exp)] * (2 * n))
    coeff = st.one_of(
        st.integers(-9, 9),
        st.fractions(min_value=-5, max_value=5, max_denominator=7),
    )
    terms = draw(st.lists(st.tuples(mono, coeff), max_size=max_terms))
    return WeylElement(n, terms)


@st.composite
def triples(draw):
    n = draw(st.integers(1, 4))
    return draw(elements(n)), draw(elements(n)), draw(elements(n))


# -- normalize ----------------------------------------------------------------


def test_normalize_collects_like_terms():
    assert normalize([((1, 1), 2), ((1, 1), 3)]).terms == {(1, 1): 5}


def test_normalize_cancels_to_zero():
    w = normalize([((0, 1), 7), ((0, 1), -7)])
    assert w.is_zero and w.arity == 1


def test_normalize_three_terms():
    w = normalize([((2, 3), 4), ((1, 2), 12), ((0, 1), 7)])
    assert w.terms == {(0, 1): 7, (1, 2): 12, (2, 3): 4}


def test_normalize_mixed_arity():
    with pytest.raises(ArityError):
        normalize([((1, 1), 2), ((1, 1, 0, 0), 3)])


def test_constructor_rejects_bad_monomials():
    with pytest.raises(ArityError):
        WeylElement(2, {(1, 1): 1})
    with pytest.raises(ValueError):
        WeylElement(1, {(-1, 0): 1})
    with pytest.raises(TypeError):
        WeylElement(1, {(1, 0): 0.5})


def test_terms_are_in_graded_lex_order():
    w = element({(2, 3): 4, (0, 1): 7, (1, 2): 12, (0, 0): 1, (1, 0): 2})
    assert list(w.terms) == [(0, 0), (1, 0), (0, 1), (1, 2), (2, 3)]


def test_integral_fractions_stored_as_int():
    w = element({(1, 0): Fraction(6, 3)})
    assert type(w.coefficient((1, 0))) is int


# -- add / mul / pow ------------------------------------------------------------


def test_add_identity_and_inverse():
    a = random_element(3, arity=2)
    assert a + zero(2) == a
    assert (a + (-1) * a).is_zero


def test_add_golden():
    assert (7 * d + element({(2, 3): 4, (1, 2): 12})).terms == {(0, 1): 7, (1, 2): 12, (2, 3): 4}


def test_d_times_x():
    assert (d * x).terms == {(0, 0): 1, (1, 1): 1}


def test_mul_identity():
    a = random_element(11, arity=3)
    assert one(3) * a == a == a * one(3)
    assert 1 * a == a


def test_mul_golden_product():
    d1 = element({(0, 0): 1, (1, 1): 1, (0, 3): 2})
    d2 = element({(0, 0): 3, (0, 1): 7, (2, 2): -5})
    expected = {
        (0, 0): 3, (0, 1): 7, (1, 1): 3, (1, 2): 7, (2, 2): -15,
        (0, 3): -54, (0, 4): 14, (1, 4): -60, (3, 3): -5, (2, 5): -10,
    }
    assert mul(d1, d2).terms == expected


def test_pow():
    a = random_element(5, arity=2)
    assert power(a, 0) == one(2)
    assert (2 * d**3).terms == {(0, 3): 2}
    # (x d)^2 = x^2 d^2 + x d
    assert ((x * d) ** 2).terms == {(2, 2): 1, (1, 1): 1}
    with pytest.raises(ValueError):
        power(a, -1)


def test_arity_mismatch():
    with pytest.raises(ArityError):
        add(random_element(1, arity=1), random_element(1, arity=2))
    with pytest.raises(ArityError):
        mul(generator(0, 2), generator(0, 3))


def test_scalar_promotion():
    a = random_element(7, arity=3)
    assert a + 3 == a + scalar(3, 3)
    assert a + scalar(3, 1) == a + scalar(3, 3)
    assert 3 + a == a + 3
    assert (5 - a) == -(a - 5)
    assert Fraction(1, 2) * a == a * scalar(Fraction(1, 2), 1)
    assert scalar(2, 1) * scalar(3, 4) == 6


def test_mixed_rules_rejected():
    e = generator(0, rule=EXPONENTIAL)
    with pytest.raises(ValueError, match="rules"):
        mul(e, d)
    # scalars adopt the other operand's rule
    assert (1 + e).rule is EXPONENTIAL


# -- commutator / derivations ---------------------------------------------------


def test_commutators():
    assert commutator(d, x) == 1
    assert commutator(x, x).is_zero
    assert commutator(d**3, x) == 3 * d**2


def test_inner_derivation_examples():
    f = random_element(21, arity=3)
    assert derivation_apply(inner_derivation(f), f).is_zero
    assert inner_derivation(x)(d) == 1


# -- degree / equality -------------------------------------------------------


def test_degree():
    assert degree(one(1)) == 0
    assert degree(element({(0, 1): 7, (1, 2): 12, (2, 3): 4})) == 5
    assert degree(zero(2)) == -math.inf


def test_equal():
    a = random_element(1, arity=2)
    assert not equal(a, a + 1)
    assert a != a + 1
    assert equal(zero(1), zero(4))
    assert not equal(generator(0, 1), generator(0, 2))
    assert one(2) == 1 and hash(one(2)) == hash(1)


def test_exponential_equality():
    e = generator(0, rule=EXPONENTIAL)
    de = derivative(0, rule=EXPONENTIAL)
    assert equal(de**5 * e, e * (1 + de) ** 5)


@pytest.mark.parametrize("n", range(9))
def test_exponential_closed_form(n):
    e = generator(0, rule=EXPONENTIAL)
    de = derivative(0, rule=EXPONENTIAL)
    assert de**n * e == e * (1 + de) ** n


# -- random elements ----------------------------------------------------------


def test_random_element_deterministic():
    assert random_element(42).terms == random_element(42).terms
    assert len(random_element(42, n_terms=1)) == 1


def test_random_element_invariants():
    for seed in range(100):
        w = random_element(seed)
        assert len(w) <= 3
        for mono, c in w.items():
            assert len(mono) == 6
            assert all(0 <= e <= 2 for e in mono)
            assert c != 0


def test_random_element_default_shape_matches_names():
    assert random_element(0).var_names == ("x", "y", "z")


# -- properties ----------------------------------------------------------------


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b * c) == (a * b) * c
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert 1 * a == a * 1 == a


@given(triples())
def test_commutator_bilinear_antisymmetric(t):
    a, b, c = t
    assert commutator(a, b) == -commutator(b, a)
    assert commutator(a + b, c) == commutator(a, c) + commutator(b, c)


@given(triples())
def test_leibniz(t):
    f, d1, d2 = t
    D = inner_derivation(f)
    assert D(d1 * d2) == d1 * D(d2) + D(d1) * d2


@given(triples(), st.fractions(max_denominator=9))
def test_derivation_linear(t, alpha):
    f, a, b = t
    D = inner_derivation(f)
    assert D(alpha * a + b) == alpha * D(a) + D(b)


@given(triples())
def test_domain_property(t):
    a, b, _ = t
    if a.is_zero or b.is_zero:
        return
    p = a * b
    assert not p.is_zero
    assert degree(p) == degree(a) + degree(b)


@given(elements(arity=2), st.integers(-5, 5), st.integers(-5, 5))
def test_scalar_promotion_coherence(a, c1, c2):
    assert a + c1 == a + scalar(c1, 2)
    assert scalar(c1, 2) + scalar(c2, 2) == c1 + c2
    assert scalar(c1, 2) * scalar(c2, 2) == c1 * c2
    assert c1 * a == scalar(c1, 2) * a


@given(st.lists(st.tuples(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-3, 3)), max_size=6),
       st.randoms())
def test_normal_form_independent_of_term_order(raw, rnd):
    shuffled = list(raw)
    rnd.shuffle(shuffled)
    a = WeylElement(2, raw)
    b = WeylElement(2, shuffled)
    assert a.terms == b.terms and list(a.terms) == list(b.terms)


def test_normal_form_independent_of_association():
    a, b, c = (random_element(s, arity=2) for s in (1, 2, 3))
    assert list((a * b * c).terms.items()) == list((a * (b * c)).terms.items())


def test_noncommutativity_witness():
    assert mul(d, x) - mul(x, d) == 1
