"""Independent checkers: textbook Buchberger over F_p and a brute-force membership test.

Deliberately naive.  Polynomials over F_p are dicts ``{exponent: c}`` with
``0 < c < p``; nothing here touches the valuation-aware machinery except
for reading coefficients out of series.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .context import ORDERS, ceil_div, split_unit
from .series import TateSeries

FpPoly = dict


def _okey(order: str):
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}")
    if order == "lex":
        return lambda e: tuple(e)
    return lambda e: (sum(e), tuple(-k for k in reversed(e)))


def fp_normalize(f: FpPoly, p: int) -> FpPoly:
    return {tuple(e): c % p for e, c in f.items() if c % p}


def fp_lm(f: FpPoly, order: str):
    return max(f, key=_okey(order))


def _fp_sub_mul(f: FpPoly, g: FpPoly, c: int, shift, p: int) -> FpPoly:
    out = dict(f)
    for e, a in g.items():
        ne = tuple(x + y for x, y in zip(e, shift))
        v = (out.get(ne, 0) - c * a) % p
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def fp_reduce(f: FpPoly, G: Sequence[FpPoly], p: int, order: str = "grevlex") -> FpPoly:
    """Full reduction of ``f`` by ``G`` (every term, not only the leading one)."""
    key = _okey(order)
    G = [g for g in G if g]
    f = fp_normalize(f, p)
    rem: FpPoly = {}
    while f:
        e = max(f, key=key)
        c = f[e]
        for g in G:
            m = fp_lm(g, order)
            if all(a <= b for a, b in zip(m, e)):
                shift = tuple(b - a for a, b in zip(m, e))
                f = _fp_sub_mul(f, g, c * pow(g[m], -1, p), shift, p)
                break
        else:
            rem[e] = c
            del f[e]
    return rem


def fp_spoly(f: FpPoly, g: FpPoly, p: int, order: str) -> FpPoly:
    mf, mg = fp_lm(f, order), fp_lm(g, order)
    lcm = tuple(map(max, mf, mg))
    a = _fp_sub_mul({}, f, -pow(f[mf], -1, p), tuple(x - y for x, y in zip(lcm, mf)), p)
    return _fp_sub_mul(a, g, pow(g[mg], -1, p), tuple(x - y for x, y in zip(lcm, mg)), p)


def classical_criterion(G: Sequence[FpPoly], p: int, order: str = "grevlex") -> bool:
    G = [fp_normalize(g, p) for g in G]
    G = [g for g in G if g]
    return all(
        not fp_reduce(fp_spoly(G[i], G[j], p, order), G, p, order)
        for i in range(len(G))
        for j in range(i + 1, len(G))
    )


def classical_gb(polys: Sequence[FpPoly], p: int, order: str = "grevlex") -> list[FpPoly]:
    """Reduced Gröbner basis over F_p, sorted by decreasing leading monomial."""
    key = _okey(order)
    G = [fp_normalize(f, p) for f in polys]
    G = [g for g in G if g]
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    while pairs:
        i, j = pairs.pop(0)
        r = fp_reduce(fp_spoly(G[i], G[j], p, order), G, p, order)
        if r:
            G.append(r)
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    # minimalize, then interreduce and make monic
    lms = [fp_lm(g, order) for g in G]
    keep = []
    for i, m in enumerate(lms):
        divisible = any(
            all(a <= b for a, b in zip(lms[j], m)) and (lms[j] != m or j < i) for j in range(len(G)) if j != i
        )
        if not divisible:
            keep.append(G[i])
    out = []
    for k, g in enumerate(keep):
        g = fp_reduce(g, keep[:k] + keep[k + 1 :], p, order) if len(keep) > 1 else g
        g = {e: c for e, c in g.items()}
        # the leading monomial survives full reduction because it is minimal
        m = fp_lm(g, order)
        inv = pow(g[m], -1, p)
        out.append({e: c * inv % p for e, c in g.items()})
    out.sort(key=lambda g: key(fp_lm(g, order)), reverse=True)
    return out


def same_fp_ideal(A: Sequence[FpPoly], B: Sequence[FpPoly], p: int, order: str = "grevlex") -> bool:
    """Mutual reduction to zero against each other's reduced Gröbner basis."""
    ga, gb = classical_gb(A, p, order), classical_gb(B, p, order)
    return all(not fp_reduce(f, gb, p, order) for f in A) and all(not fp_reduce(f, ga, p, order) for f in B)


# brute-force membership over Z/p^N


def _val(n: int, p: int, N: int) -> int:
    n %= p**N
    if n == 0:
        return N
    return split_unit(n, p)[0]


def span_contains(rows: list[list[int]], target: list[int], p: int, N: int) -> bool:
    """Whether ``target`` lies in the Z/p^N-span of ``rows`` (Howell-style elimination)."""
    mod = p**N
    rows = [[x % mod for x in r] for r in rows]
    t = [x % mod for x in target]
    ncols = len(t)
    for col in range(ncols):
        live = [r for r in rows if r[col] % mod]
        if not live:
            if t[col]:
                return False
            continue
        piv = min(live, key=lambda r: _val(r[col], p, N))
        v = _val(piv[col], p, N)
        unit_inv = pow(piv[col] // p**v, -1, mod)
        rest = []
        for r in rows:
            if r is piv:
                continue
            if r[col]:
                c = (r[col] // p**v) * unit_inv % mod
                r = [(a - c * b) % mod for a, b in zip(r, piv)]
            rest.append(r)
        if v:
            # p^(N-v) * pivot has a zero entry here but may reach new vectors
            rest.append([a * p ** (N - v) % mod for a in piv])
        if t[col]:
            tv = _val(t[col], p, N)
            if tv < v:
                return False
            c = (t[col] // p**v) * unit_inv % mod
            t = [(a - c * b) % mod for a, b in zip(t, piv)]
        rows = rest
    return True


def brute_ideal_contains(
    f: TateSeries, gens: Sequence[TateSeries], bound: int, mode: str = "integral", shift: int = 0
):
    """True if ``f`` is found as a combination with cofactor degrees <= ``bound``, else None.

    Cofactors are terms ``a X^k`` with ``a`` in K (never an extra root of p);
    in integral mode they have valuation >= 0, in rational mode >= -``shift``.
    The comparison happens at the smallest precision involved.  None means
    "not found", which is not a proof of non-membership.
    """
    if f.is_zero():
        return True
    ctx = f.ctx
    p, D = ctx.prime, ctx.D
    floor_w = 0 if mode == "integral" else -shift * D
    cofs = []
    for k in product(range(bound + 1), repeat=ctx.nvars):
        if sum(k) > bound:
            continue
        # cheapest power of p keeping the cofactor above the floor
        a = ceil_div(floor_w + ctx.radius_dot(k), D)
        cofs.append((k, a))
    cap = min([f.cap] + [g.cap + floor_w for g in gens])
    products = []
    for g in gens:
        for k, a in cofs:
            prod = _shifted(g, k, a)
            products.append(prod)
    exps = sorted({e for s in products + [f] for e in s.terms})
    lo = min([f.min_val()] + [s.min_val() for s in products if not s.is_zero()])
    # coordinate of exponent e: coefficient divided by p^base(e), modulo p^(top(e) - base(e))
    base = {e: ceil_div(lo + ctx.radius_dot(e), D) for e in exps}
    top = {e: ceil_div(cap + ctx.radius_dot(e), D) for e in exps}
    N = max(top[e] - base[e] for e in exps)
    if N <= 0:
        return True

    def vec(s):
        out = []
        for e in exps:
            c = s.coefficient(e) / Fraction(p) ** base[e]
            if c.denominator != 1:
                raise ValueError("coefficient below the chosen floor")
            out.append(int(c) * p ** (N - (top[e] - base[e])))
        return out

    return True if span_contains([vec(s) for s in products], vec(f.truncate(cap)), p, N) else None


def _shifted(g: TateSeries, k, a: int) -> TateSeries:
    ctx = g.ctx
    from .term import Term

    t = Term(tuple(k), ctx.D * a - ctx.radius_dot(k), 1)
    return g.term_mul(t)
