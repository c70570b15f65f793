"""Division with remainder and ideal membership."""

from __future__ import annotations

import heapq
from typing import Sequence

from .context import PrecisionError, ceil_div, ppow
from .series import TateSeries, accumulate
from .term import check_mode


def _heap_key(ctx, w, e, memo=None):
    # heapq is a min-heap; the greatest term must come out first
    if memo is None:
        return (w, _neg(ctx.order_key(e)), e)
    nk = memo.get(e)
    if nk is None:
        nk = memo[e] = _neg(ctx.order_key(e))
    return (w, nk, e)


def _neg(key):
    if isinstance(key, tuple):
        return tuple(_neg(k) for k in key)
    return -key


def divide(f: TateSeries, divisors: Sequence[TateSeries], mode: str = "integral"):
    """Divide ``f`` by ``divisors``; returns ``(quotients, remainder)``.

    The leading term of the running dividend is cancelled by the first
    divisor (in list order) whose leading term divides it, using the exact
    quotient term, otherwise it is moved to the remainder.  In integral mode
    every quotient term has nonnegative valuation, so the working cap never
    drops; in rational mode it drops by the valuation of negative quotients.
    """
    check_mode(mode)
    ctx = f.ctx
    for h in divisors:
        f._check(h)
        if h.is_zero():
            raise PrecisionError("division by a series that is zero at this precision")
    p, D = ctx.prime, ctx.D
    lts = [h.leading_term() for h in divisors]
    hterms = [list(h.terms.items()) for h in divisors]
    integral = mode == "integral"

    work = dict(f._terms)
    cap = f.cap
    memo: dict = {}
    heap = [_heap_key(ctx, w, e, memo) for e, (w, _) in work.items()]
    heapq.heapify(heap)
    quot: list[dict] = [{} for _ in divisors]
    rem: dict = {}

    while heap:
        w, _, e = heapq.heappop(heap)
        if w >= cap:
            break
        cur = work.get(e)
        if cur is None or cur[0] != w:
            continue
        u = cur[1]
        for k, lt in enumerate(lts):
            if integral and lt.val > w:
                continue
            if any(a > b for a, b in zip(lt.exp, e)):
                continue
            h = divisors[k]
            qexp = tuple(a - b for a, b in zip(e, lt.exp))
            qval = w - lt.val
            uprec = min(ceil_div(cap - w, D), h.unit_prec(lt.val))
            mod = ppow(p, max(uprec, 1))
            qunit = u * pow(lt.unit, -1, mod) % mod
            cap = min(cap, h.cap + qval)
            accumulate(ctx, quot[k], qexp, qval, qunit, cap - h.min_val())
            for he, (hw, hu) in hterms[k]:
                ne = tuple(a + b for a, b in zip(he, qexp))
                nw = hw + qval
                accumulate(ctx, work, ne, nw, -hu * qunit, cap)
                cur = work.get(ne)
                if cur is not None and ne != e:
                    heapq.heappush(heap, _heap_key(ctx, cur[0], ne, memo))
            # the leading term cancels up to the working precision
            work.pop(e, None)
            break
        else:
            if e in rem:
                # merge with the earlier remainder term and look at the sum again,
                # a cancellation may have made it divisible
                rw, ru = rem.pop(e)
                accumulate(ctx, work, e, rw, ru, cap)
                cur = work.get(e)
                if cur is not None:
                    heapq.heappush(heap, _heap_key(ctx, cur[0], e, memo))
                continue
            del work[e]
            rem[e] = (w, u)
    remainder = TateSeries(ctx, rem, cap)
    quotients = [TateSeries(ctx, q, cap - h.min_val()) for q, h in zip(quot, divisors)]
    return quotients, remainder


def reduce(f: TateSeries, G: Sequence[TateSeries], mode: str = "integral") -> TateSeries:
    return divide(f, G, mode)[1]


def is_member(f: TateSeries, gb: Sequence[TateSeries], mode: str = "integral") -> bool:
    """Membership modulo the working precision; ``gb`` must be a Gröbner basis."""
    return reduce(f, gb, mode).is_zero()
