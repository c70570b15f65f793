from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tategb import Term, divides, gcd_term, lcm_term, new_context, skel_geq, skeleton, term_cmp
from tategb.term import divides_T, divides_To, same_class, term_degree, term_val

CTX = new_context(2, ["x", "y"], prec_cap=5)
LEX = new_context(3, ["x", "y"], order="lex", prec_cap=5)
HALF = new_context(2, ["x"], [Fraction(1, 2)], prec_cap=5)


def T(ctx, c, *exp):
    return Term.from_coefficient(ctx, c, exp)


def test_term_val():
    assert term_val(T(CTX, 2, 2, 0)) == 1
    assert term_val(T(HALF, 2, 1)) == 1  # half, in units of 1/2
    assert term_val(T(CTX, 1, 0, 0)) == 0


def test_term_order_examples():
    assert term_cmp(T(LEX, 1, 1, 0), T(LEX, 1, 0, 1), LEX) == 1
    assert term_cmp(T(LEX, 1, 0, 0), T(LEX, 3, 1, 2), LEX) == 1
    assert term_cmp(T(LEX, 1, 2, 1), T(LEX, -1, 2, 1), LEX) == 0
    assert term_cmp(T(LEX, 1, 1, 2), T(LEX, 1, 1, 1), LEX) == 1


def test_divisibility_in_T():
    assert divides_T(T(CTX, 2, 1, 0), T(CTX, 5, 1, 2))
    assert not divides_T(T(CTX, 1, 2, 0), T(CTX, 1, 1, 0))
    t = T(CTX, 6, 1, 1)
    assert divides_T(t, t)


def test_divisibility_in_T_integral():
    one = new_context(2, ["X"], prec_cap=5)
    assert not divides_To(T(one, 2, 1), T(one, 1, 2))
    assert divides_To(T(one, 1, 1), T(one, 2, 2))
    assert not divides_To(T(HALF, 2, 1), T(HALF, 2, 2))
    assert divides(T(one, 2, 1), T(one, 1, 2), "rational")


def test_gcd_lcm():
    a, b = T(CTX, 2, 2, 0), T(CTX, 4, 1, 3)
    assert gcd_term(a, b, CTX) == Term((1, 0), 1, 1)
    assert lcm_term(a, b, CTX) == Term((2, 3), 2, 1)
    assert gcd_term(T(CTX, 5, 1, 2), T(CTX, 2, 2, 1), CTX) == Term((1, 1), 0, 1)
    t = T(CTX, 12, 1, 1)
    assert gcd_term(t, t, CTX) == Term((1, 1), 2, 1)


def test_gcd_needs_zero_radii():
    with pytest.raises(ValueError):
        gcd_term(T(HALF, 1, 1), T(HALF, 1, 2), HALF)


def test_skeleton_examples():
    ts = [T(CTX, 1, *e) for e in [(2, 1), (3, 0), (1, 2), (2, 2)]]
    assert sorted(t.exp for t in skeleton(ts, "rational", CTX)) == [(1, 2), (2, 1), (3, 0)]
    one = new_context(2, ["X"], prec_cap=5)
    ts = [T(one, 2, 1), T(one, 1, 2)]
    assert len(skeleton(ts, "integral", one)) == 2
    assert skeleton([ts[0]], "rational", one) == [ts[0]]


def test_skeleton_keeps_one_per_class():
    ts = [T(CTX, 3, 1, 1), T(CTX, 1, 1, 1), T(CTX, 5, 1, 1)]
    assert len(skeleton(ts, "integral", CTX)) == 1


def test_skel_geq():
    got = skel_geq(1, HALF)
    assert sorted((t.exp, t.val) for t in got) == [((0,), 2), ((1,), 1)]  # {p, pX}
    zero = new_context(2, ["X"], prec_cap=5)
    assert [(t.exp, t.val) for t in skel_geq(1, zero)] == [((0,), 1)]
    assert [(t.exp, t.val) for t in skel_geq(0, zero)] == [((0,), 0)]
    with pytest.raises(NotImplementedError):
        skel_geq(0, CTX)


@pytest.mark.parametrize("num,den", [(1, 2), (1, 3), (2, 3), (-1, 2), (3, 4), (5, 2)])
@pytest.mark.parametrize("v", [-3, -1, 0, 1, 2, 5])
def test_skel_geq_against_enumeration(num, den, v):
    ctx = new_context(3, ["X"], [Fraction(num, den)], prec_cap=5)
    D = ctx.D
    # every p^a X^i with val >= v/D and i <= 40 must be divisible by a skeleton term
    skel = skel_geq(v, ctx)
    for t in skel:
        assert t.val >= v
    for i in range(40):
        a = -((-(v + ctx.radius_dot((i,)))) // D)
        t = Term((i,), D * a - ctx.radius_dot((i,)), 1)
        assert any(divides_To(s, t) for s in skel)


def test_degree():
    assert term_degree(T(CTX, 1, 2, 1)) == 3
    assert term_degree(T(CTX, 7, 0, 0)) == 0
    assert term_degree(lcm_term(T(CTX, 2, 2, 0), T(CTX, 4, 1, 3), CTX)) == 5


terms = st.builds(
    lambda e, v, u: Term(e, v, u),
    st.tuples(st.integers(0, 6), st.integers(0, 6)),
    st.integers(-3, 6),
    st.sampled_from([1, 3, 5, 7]),
)


@given(terms, terms, terms)
def test_order_is_total_and_multiplicative(s, t, u):
    assert term_cmp(t, u, CTX) == -term_cmp(u, t, CTX)
    if term_cmp(t, u, CTX) <= 0:
        assert term_cmp(s * t, s * u, CTX) <= 0
    assert (term_cmp(t, u, CTX) == 0) == same_class(t, u, "integral")


@given(terms, terms)
def test_gcd_lcm_properties(t, u):
    g, m = gcd_term(t, u, CTX), lcm_term(t, u, CTX)
    for x in (t, u):
        assert divides_To(g, x)
        assert divides_To(x, m)
    assert g.val == min(t.val, u.val) and m.val == max(t.val, u.val)


def _generates(gens, t, mode):
    return any(divides(g, t, mode) for g in gens)


@settings(max_examples=150)
@given(st.lists(terms, min_size=1, max_size=20), st.sampled_from(["rational", "integral"]))
def test_skeleton_brute_force(ts, mode):
    skel = skeleton(ts, mode, CTX)
    # same monoid ideal
    assert all(_generates(skel, t, mode) for t in ts)
    assert all(any(same_class(s, t, mode) for t in ts) for s in skel)
    # pairwise incomparable
    for a, b in combinations(skel, 2):
        assert not divides(a, b, mode) and not divides(b, a, mode)
    # every generating subset must contain each skeleton class
    for s in skel:
        rest = [t for t in ts if not same_class(t, s, mode)]
        assert not _generates(rest, s, mode)
