import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rewriting import monomial_word, normal_order
from weyl import (
    EXPONENTIAL,
    WEYL,
    WEYL_RECURSIVE,
    WeylElement,
    exponential_kernel,
    make_rule,
    mul,
    weyl_kernel_closed,
    weyl_kernel_recursive,
)

WEYL_KERNELS = [weyl_kernel_closed, weyl_kernel_recursive]
ALL_RULES = [WEYL, WEYL_RECURSIVE, EXPONENTIAL]


@pytest.mark.parametrize("kernel", WEYL_KERNELS)
def test_d_x_commutation(kernel):
    assert kernel(0, 1, 1, 0) == {(1, 1): 1, (0, 0): 1}


def test_closed_d3_x2():
    # frozen from the rewriting oracle
    expected = {(2, 3): 1, (1, 2): 6, (0, 1): 6}
    assert normal_order(monomial_word(0, 3, 2, 0)) == expected
    assert weyl_kernel_closed(0, 3, 2, 0) == expected


def test_recursive_bottom_case():
    assert weyl_kernel_recursive(5, 2, 0, 7) == {(5, 9): 1}


@pytest.mark.parametrize("kernel", WEYL_KERNELS)
def test_weyl_kernels_match_rewriting(kernel):
    for a, b, c, d in itertools.product(range(4), repeat=4):
        assert kernel(a, b, c, d) == normal_order(monomial_word(a, b, c, d)), (a, b, c, d)


def test_exponential_kernel_matches_rewriting():
    for a, b, c, d in itertools.product(range(4), repeat=4):
        got = exponential_kernel(a, b, c, d)
        assert got == normal_order(monomial_word(a, b, c, d), "exponential"), (a, b, c, d)


def test_closed_equals_recursive_on_full_grid():
    for args in itertools.product(range(7), repeat=4):
        assert weyl_kernel_closed(*args) == weyl_kernel_recursive(*args), args


def test_exponential_d2_e():
    assert exponential_kernel(0, 2, 1, 0) == {(1, 0): 1, (1, 1): 2, (1, 2): 1}


def test_exponential_d5_e_is_binomial():
    assert exponential_kernel(0, 5, 1, 0) == {(1, k): comb(5, k) for k in range(6)}


@pytest.mark.parametrize("rule", ALL_RULES, ids=lambda r: r.name)
def test_bottoming_identities(rule):
    for a, b, c, d in itertools.product(range(6), repeat=4):
        assert rule(a, 0, c, d) == {(a + c, d): 1}
        assert rule(a, b, 0, d) == {(a, b + d): 1}
        assert all(g >= 0 and p >= 0 for g, p in rule(a, b, c, d))


def test_make_rule_rejects_bad_bottoming():
    def broken(a, b, c, d):
        return {(a + c, b + d): 1}

    with pytest.raises(ValueError, match="k\\(a,0,c,d\\)|k\\(a,b,0,d\\)"):
        make_rule("broken", lambda a, b, c, d: {(a + c, b + d): 2})
    # commutative product obeys both bottoming identities, so it is accepted
    rule = make_rule("commutative", broken)
    assert rule(0, 1, 1, 0) == {(1, 1): 1}


def test_make_rule_rejects_negative_exponents():
    def negative(a, b, c, d):
        if b and c:
            return {(a + c, b + d): 1, (-1, 0): 1}
        return {(a + c, b + d): 1}

    with pytest.raises(ValueError, match="negative"):
        make_rule("negative", negative)


def test_custom_rule_drives_mul():
    commutative = make_rule("commutative", lambda a, b, c, d: {(a + c, b + d): 1})
    x = WeylElement(1, {(1, 0): 1}, commutative)
    d = WeylElement(1, {(0, 1): 1}, commutative)
    assert d * x == x * d


def test_cache_does_not_change_results():
    for args in itertools.product(range(4), repeat=4):
        assert dict(WEYL.terms(*args)) == dict(WEYL.uncached().terms(*args)) == weyl_kernel_closed(*args)


exps = st.integers(0, 3)
single_terms = st.tuples(exps, exps, st.integers(1, 5))


@pytest.mark.parametrize("rule", ALL_RULES, ids=lambda r: r.name)
@given(u=single_terms, v=single_terms, w=single_terms)
def test_kernel_associativity_through_mul(rule, u, v, w):
    u, v, w = (WeylElement(1, {(g, p): c}, rule) for g, p, c in (u, v, w))
    assert (u * v) * w == u * (v * w)


@given(
    arity=st.integers(2, 4),
    slot=st.integers(0, 3),
    left=st.tuples(exps, exps),
    right=st.tuples(exps, exps),
    others=st.lists(exps, min_size=12, max_size=12),
)
def test_multivariate_factorization(arity, slot, left, right, others):
    # outside `slot` the left factor has no derivatives, so nothing commutes
    # there and exponents simply add
    n = arity
    slot %= n
    ma = [others[k] for k in range(n)] + [0] * n
    mb = [others[4 + k] for k in range(n)] + [others[8 + k] for k in range(n)]
    ma[slot], ma[n + slot] = left
    mb[slot], mb[n + slot] = right
    a = WeylElement(n, {tuple(ma): 1})
    b = WeylElement(n, {tuple(mb): 1})
    expected = {}
    for (g, p), c in weyl_kernel_closed(*left, *right).items():
        key = [x + y for x, y in zip(ma, mb)]
        key[slot], key[n + slot] = g, p
        expected[tuple(key)] = c
    assert mul(a, b).terms == expected
