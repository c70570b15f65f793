import random
from fractions import Fraction

import pytest

from tategb import TateSeries, new_context, parse_series


def demo_context(prec=5, order="grevlex"):
    return new_context(2, ["x", "y"], order=order, prec_cap=prec)


@pytest.fixture
def ctx2():
    return demo_context()


@pytest.fixture
def demo(ctx2):
    f = parse_series("2*x^2 + 5*x*y^2", ctx2)
    g = parse_series("4 + 2*x^2*y", ctx2)
    return f, g


def random_series(rng, ctx, nterms, max_deg=3, min_val=0, cap=None):
    """Random series with up to ``nterms`` terms; coefficients are p^k * c with k >= min_val."""
    p = ctx.prime
    cap = ctx.cap if cap is None else cap
    coeffs = {}
    for _ in range(nterms):
        exp = tuple(rng.randint(0, max_deg) for _ in range(ctx.nvars))
        k = rng.choice([min_val, min_val, min_val + 1, min_val + 2])
        c = rng.randint(1, p**3)
        coeffs[exp] = coeffs.get(exp, 0) + Fraction(c) * Fraction(p) ** k
    return TateSeries.from_coefficients(ctx, coeffs, cap)


def random_ideal(rng, prime=None, nvars=None, prec=6, max_gens=4, max_terms=5):
    prime = prime or rng.choice([2, 3])
    nvars = nvars or rng.choice([2, 3])
    ctx = new_context(prime, ["x", "y", "z"][:nvars], prec_cap=prec)
    gens = []
    while len(gens) < rng.randint(1, max_gens) or not gens:
        s = random_series(rng, ctx, rng.randint(1, max_terms), max_deg=3)
        if not s.is_zero():
            gens.append(s)
    return ctx, gens


def corpus(count, seed=20240601, **kw):
    rng = random.Random(seed)
    return [random_ideal(rng, **kw) for _ in range(count)]


def lt_classes(G):
    return sorted((g.leading_term().exp, g.leading_term().val) for g in G)


def division_case(rng, mode):
    """Random dividend and up to 4 divisors of up to 6 terms each."""
    ctx = new_context(rng.choice([2, 3]), ["x", "y", "z"][: rng.choice([2, 3])], prec_cap=rng.randint(3, 8))
    low = -1 if mode == "rational" else 0
    f = random_series(rng, ctx, rng.randint(0, 8), max_deg=5, min_val=low)
    divisors = []
    while len(divisors) < rng.randint(1, 4) or not divisors:
        h = random_series(rng, ctx, rng.randint(1, 6), max_deg=3, min_val=rng.choice([0, 0, 1]) if low == 0 else low)
        if not h.is_zero():
            divisors.append(h)
    return f, divisors


def division_violations(f, divisors, mode):
    """Empty list when the division output honours its contract."""
    from tategb import divide, divides, term_cmp

    qs, r = divide(f, divisors, mode)
    out = []
    acc = f - r
    for q, h in zip(qs, divisors):
        acc = acc - q * h
    if acc.cap < r.cap:
        out.append(f"identity only known to {acc.cap} < {r.cap}")
    if not acc.truncate(r.cap).is_zero():
        out.append(f"f - sum q h - r = {acc}")
    lts = [h.leading_term() for h in divisors]
    for t in r.term_list():
        if any(divides(lt, t, mode) for lt in lts):
            out.append(f"remainder term {t} is reducible")
    flt = None if f.is_zero() else f.leading_term()
    for q, lt in zip(qs, lts):
        for t in q.term_list():
            if mode == "integral" and t.val < 0:
                out.append(f"quotient term {t} not integral")
            if flt is not None and term_cmp(t * lt, flt, f.ctx) > 0:
                out.append(f"quotient term {t} overshoots the leading term")
    return out
