import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import division_case, division_violations
from tategb import PrecisionError, TateSeries, buchberger, divide, is_member, new_context, parse_series, reduce

CTX = new_context(2, ["x", "y"], prec_cap=5)


def S(text):
    return parse_series(text, CTX)


def test_self_division():
    h = S("x^2*y + 2")
    qs, r = divide(h, [h])
    assert qs[0] == S("1") and r.is_zero()


def test_spoly_of_demo_is_not_reduced(demo):
    qs, r = divide(S("4*x^3 - 20*y"), list(demo), "integral")
    assert not r.is_zero()
    assert r == S("4*x^3 + 12*y")


def test_nothing_divisible():
    qs, r = divide(S("y"), [S("x")], "rational")
    assert qs[0].is_zero() and r == S("y")


def test_reduce_examples(demo):
    f, _ = demo
    assert reduce(f, [f]).is_zero()
    G = buchberger(list(demo), "rational")
    assert reduce(S("x^3 + 11*y"), G, "rational").is_zero()
    assert reduce(S("1"), [S("x"), S("y")]) == S("1")


def test_membership(demo):
    Go = buchberger(list(demo), "integral")
    assert not is_member(S("2 + x^2*y"), Go, "integral")
    assert is_member(S("4 + 2*x^2*y"), Go, "integral")
    assert is_member(TateSeries.zero(CTX), Go, "integral")


def test_rational_mode_allows_negative_quotients():
    qs, r = divide(S("x"), [S("2*x")], "rational")
    assert r.is_zero() and qs[0].min_val() == -1
    qs, r = divide(S("x"), [S("2*x")], "integral")
    assert r == S("x")


def test_first_divisor_wins():
    qs, _ = divide(S("x*y"), [S("x"), S("y")], "rational")
    assert qs[0] == S("y") and qs[1].is_zero()
    qs, _ = divide(S("x*y"), [S("y"), S("x")], "rational")
    assert qs[0] == S("x") and qs[1].is_zero()


def test_remainder_terms_merge():
    # both divisors push terms onto the same irreducible exponent
    qs, r = divide(S("x^2 + x*y"), [S("x^2 + y"), S("x*y + y")], "integral")
    assert r == S("30*y")


def test_zero_divisor_rejected():
    with pytest.raises(PrecisionError):
        divide(S("x"), [TateSeries.zero(CTX)])


@pytest.mark.parametrize("mode", ["integral", "rational"])
@settings(max_examples=300, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_division_contract(mode, seed):
    f, divisors = division_case(random.Random(seed), mode)
    assert division_violations(f, divisors, mode) == []
