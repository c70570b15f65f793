"""S-polynomials, Buchberger's algorithm and minimal bases."""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Sequence

from .context import AlgebraContext, PrecisionError
from .division import reduce
from .series import TateSeries
from .term import Term, _gcd, _lcm, check_mode, divides, same_class, skel_geq

log = logging.getLogger(__name__)


class ZeroIdealError(ArithmeticError):
    """Every generator is zero at the working precision."""


@dataclass(order=True, frozen=True)
class SPair:
    lcm_deg: int
    i: int
    j: int


def make_pair(G: Sequence[TateSeries], i: int, j: int) -> SPair:
    lt_i, lt_j = G[i].leading_term(), G[j].leading_term()
    return SPair(_lcm(lt_i, lt_j).degree(), min(i, j), max(i, j))


def _coprime(s: Term, t: Term) -> bool:
    return min(s.val, t.val) == 0 and all(a == 0 or b == 0 for a, b in zip(s.exp, t.exp))


def _lcm_id(s: Term, t: Term):
    m = _lcm(s, t)
    return m.val, m.exp


def update_pairs(
    G: Sequence[TateSeries], lts: Sequence[Term], pairs: list[SPair], active: set[int], k: int
) -> list[SPair]:
    """Gebauer-Möller update after adjoining element ``k``.

    Drops new pairs by the chain and coprime criteria, drops old pairs whose
    lcm is divisible by the new leading term, and retires active elements
    whose leading term the new one divides.  Terms divide componentwise on
    (valuation, exponent), so the criteria hold as for polynomials.  At
    finite precision a chain through a less precise element only proves the
    S-polynomial is zero at that element's precision, so the chain criterion
    and retirement require the middle element to be at least as precise.
    """
    rel = {i: G[i].cap - lts[i].val for i in active}
    rel[k] = G[k].cap - lts[k].val
    h = lts[k]
    lcm = {i: _lcm(lts[i], h) for i in active}
    pending = sorted(active)
    kept: list[int] = []
    for n, i in enumerate(pending):
        if _coprime(lts[i], h):
            kept.append(i)
            continue
        floor = min(rel[i], rel[k])
        others = pending[n + 1 :] + kept
        if not any(rel[j] >= floor and divides(lcm[j], lcm[i], "integral") for j in others):
            kept.append(i)
    out = []
    for pr in pairs:
        m = _lcm_id(lts[pr.i], lts[pr.j])
        if (
            rel[k] >= min(G[pr.i].cap - lts[pr.i].val, G[pr.j].cap - lts[pr.j].val)
            and divides(h, Term(m[1], m[0], 1), "integral")
            and _lcm_id(lts[pr.i], h) != m
            and _lcm_id(lts[pr.j], h) != m
        ):
            continue
        out.append(pr)
    out.extend(SPair(_lcm(lts[i], h).degree(), i, k) for i in kept if not _coprime(lts[i], h))
    for i in list(active):
        if rel[k] >= rel[i] and divides(h, lts[i], "integral"):
            active.discard(i)
    active.add(k)
    return out


def s_poly(f: TateSeries, g: TateSeries) -> TateSeries:
    """``(LT(g)/gcd) f - (LT(f)/gcd) g`` with exact cofactor terms."""
    f._check(g)
    lf, lg = f.leading_term(), g.leading_term()
    d = _gcd(lf, lg)
    cof_f = Term(tuple(a - b for a, b in zip(lg.exp, d.exp)), lg.val - d.val, lg.unit)
    cof_g = Term(tuple(a - b for a, b in zip(lf.exp, d.exp)), lf.val - d.val, lf.unit)
    return f.term_mul(cof_f) - g.term_mul(cof_g)


def _require_engine_context(ctx: AlgebraContext):
    if ctx.D != 1:
        raise ValueError("rational log-radii: use tategb.radii.eta_gb")


def prepare(gens: Sequence[TateSeries], mode: str) -> list[TateSeries]:
    check_mode(mode)
    G = [g for g in gens if not g.is_zero()]
    if not G:
        raise ZeroIdealError("all generators are zero at this precision")
    if mode == "rational":
        # compute over the fractional integral ideal spanned by normalized generators
        G = [g.shift_val(-g.min_val()) for g in G]
    elif any(g.min_val() < 0 for g in G):
        raise ValueError("integral mode needs generators of nonnegative Gauss valuation")
    return G


def adjoin_form(r: TateSeries, mode: str) -> TateSeries:
    return r.shift_val(-r.min_val()) if mode == "rational" else r


def finalize(G: Sequence[TateSeries], mode: str) -> list[TateSeries]:
    """Minimal sub-basis, leading coefficients made pure powers, sorted greatest LT first."""
    G = minimal_gb(G, mode)
    out = []
    for g in G:
        if mode == "rational":
            lt = g.leading_term()
            # leading coefficient of valuation 0, hence a series over K again
            g = g.shift_val(-lt.val - g.ctx.radius_dot(lt.exp))
        out.append(g.monic())
    ctx = out[0].ctx
    out.sort(key=lambda g: ctx.term_key(*_vw(g.leading_term())), reverse=True)
    return out


def _vw(t: Term):
    return t.val, t.exp


def buchberger_core(gens: Sequence[TateSeries], mode: str) -> list[TateSeries]:
    """Buchberger's algorithm without the final minimalization (any log-radii)."""
    G = prepare(gens, mode)
    lts = [g.leading_term() for g in G]
    pairs: list[SPair] = []
    active: set[int] = set()
    for k in range(len(G)):
        pairs = update_pairs(G, lts, pairs, active, k)
    heapq.heapify(pairs)
    while pairs:
        pair = heapq.heappop(pairs)
        h = s_poly(G[pair.i], G[pair.j])
        # retired elements have a multiple of an active leading term
        r = reduce(h, [G[i] for i in sorted(active)], "integral")
        if r.is_zero():
            continue
        r = adjoin_form(r, mode)
        k = len(G)
        G.append(r)
        lts.append(r.leading_term())
        pairs = update_pairs(G, lts, pairs, active, k)
        heapq.heapify(pairs)
        log.debug("new basis element %d: %s", k, r)
    return G


def buchberger(gens: Sequence[TateSeries], mode: str = "integral") -> list[TateSeries]:
    """A minimal Gröbner basis of the ideal generated by ``gens``.

    Integral mode works in the integral Tate algebra.  Rational mode scales
    every generator to Gauss valuation 0 and computes over the integral
    ideal they span; its output is only "likely" a basis of the ideal of
    K{X}, since at finite precision nearby generators can span the unit ideal.
    """
    if gens:
        _require_engine_context(gens[0].ctx)
    return finalize(buchberger_core(gens, mode), mode)


def buchberger_criterion(G: Sequence[TateSeries], mode: str = "integral") -> bool:
    check_mode(mode)
    G = [g for g in G if not g.is_zero()]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not reduce(s_poly(G[i], G[j]), G, mode).is_zero():
                return False
    return True


def minimal_gb(G: Sequence[TateSeries], mode: str = "integral") -> list[TateSeries]:
    """Sub-list whose leading terms are exactly the skeleton, first occurrence kept."""
    check_mode(mode)
    G = [g for g in G if not g.is_zero()]
    lts = [g.leading_term() for g in G]
    keep: list[int] = []
    for i, t in enumerate(lts):
        if any(j != i and divides(s, t, mode) and not divides(t, s, mode) for j, s in enumerate(lts)):
            continue
        if any(same_class(lts[j], t, mode) for j in keep):
            continue
        keep.append(i)
    return [G[i] for i in keep]


def integral_from_rational(G: Sequence[TateSeries]) -> list[TateSeries]:
    """Scale each element to Gauss valuation 0 (a basis of the saturated integral ideal)."""
    out = []
    for g in G:
        if g.ctx.D != 1:
            raise ValueError("integral log-radii required; use tategb.radii for rational ones")
        if g.is_zero():
            raise PrecisionError("zero basis element")
        out.append(g.shift_val(-g.min_val()))
    return out


def saturate_integral(gens: Sequence[TateSeries]) -> list[TateSeries]:
    """Generators of the saturation in the integral ring (one variable).

    Each ``g`` is multiplied by every element of the skeleton of the terms of
    valuation at least ``-val(g)``.
    """
    out = []
    for g in gens:
        if g.is_zero():
            continue
        for t in skel_geq(-g.min_val(), g.ctx):
            out.append(g.term_mul(t))
    return out


def residue_gb(G: Sequence[TateSeries]) -> list[dict]:
    """Reduce Gauss-valuation-0 series modulo p; returns polynomials ``{exp: c}`` over F_p."""
    out = []
    for g in G:
        ctx = g.ctx
        if not ctx.radii_zero:
            raise ValueError("reduction to the residue field needs zero log-radii")
        if g.is_zero() or g.min_val() != 0:
            raise ValueError("residue_gb needs elements of Gauss valuation 0")
        p = ctx.prime
        out.append({e: u % p for e, (w, u) in g.terms.items() if w == 0})
    return out
