"""F4: degree-batched pairs, symbolic preprocessing and Tate row reduction."""

from __future__ import annotations

import csv
import heapq
import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Sequence

from .buchberger import _require_engine_context, adjoin_form, finalize, prepare, update_pairs
from .context import AlgebraContext, ppow
from .division import reduce
from .series import TateSeries
from .term import Term, _lcm, check_mode, divides

log = logging.getLogger(__name__)


@dataclass
class MacaulayMatrix:
    """Sparse rows (stored as series) over the column labels ``mon``, greatest first."""

    ctx: AlgebraContext
    mon: list
    rows: list = field(default_factory=list)
    cap: int | None = None

    def __post_init__(self):
        if len(set(self.mon)) != len(self.mon):
            raise ValueError("duplicate column labels")
        if self.cap is None:
            self.cap = min((r.cap for r in self.rows), default=self.ctx.cap)
        cols = set(self.mon)
        for r in self.rows:
            if not set(r.terms) <= cols:
                raise ValueError("row has an entry outside the column labels")

    @classmethod
    def from_series(cls, ctx: AlgebraContext, rows: Sequence[TateSeries]) -> "MacaulayMatrix":
        mon = {e for r in rows for e in r.terms}
        return cls(ctx, sort_columns(ctx, mon), list(rows))

    @classmethod
    def from_dense(cls, ctx: AlgebraContext, mon, rows, cap: int | None = None) -> "MacaulayMatrix":
        mon = [tuple(e) for e in mon]
        series = [
            TateSeries.from_coefficients(ctx, {e: c for e, c in zip(mon, row) if c}, cap) for row in rows
        ]
        return cls(ctx, mon, series)

    def dense(self) -> list[list]:
        """Entries as exact rationals (integers when the coefficients are integral)."""
        return [[row.coefficient(e) for e in self.mon] for row in self.rows]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.mon)

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow([_label(e, self.ctx.var_names) for e in self.mon])
            for row in self.dense():
                out.writerow([str(c) for c in row])


def _label(e, names) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def sort_columns(ctx: AlgebraContext, mon) -> list:
    # a column label is compared through its unit-coefficient term
    return sorted(mon, key=lambda e: ctx.term_key(-ctx.radius_dot(e), e), reverse=True)


def pair_halves(G: Sequence[TateSeries], i: int, j: int) -> tuple[TateSeries, TateSeries]:
    lt_i, lt_j = G[i].leading_term(), G[j].leading_term()
    m = _lcm(lt_i, lt_j)
    return tuple(
        G[k].term_mul(Term(tuple(a - b for a, b in zip(m.exp, lt.exp)), m.val - lt.val, 1))
        for k, lt in ((i, lt_i), (j, lt_j))
    )


def _delta_key(ctx, d: Term):
    return (d.degree(), ctx.order_key(d.exp))


def symbolic_preprocessing(
    P: Sequence[TateSeries], G: Sequence[TateSeries], mode: str = "integral", max_degree: int | None = None
) -> MacaulayMatrix:
    """Add reducers ``delta * g`` for every term of the rows, greatest term first.

    A term is covered once a row with a leading term at its exponent exists
    (any valuation in rational mode, a smaller or equal one in integral
    mode); processing in decreasing order makes the exponent test enough.
    Among the candidate reducers the cofactor of least degree (then least
    in the monomial order) wins.  Reducer rows are cut to the largest cap
    among the seed rows.  With ``max_degree`` set, monomials of larger total
    degree get no reducer; tails of higher valuation may have higher degree,
    and chasing them all makes the matrix explode.
    """
    check_mode(mode)
    if not P:
        if not G:
            raise ValueError("cannot build a matrix without rows or a context")
        return MacaulayMatrix(G[0].ctx, [], [])
    ctx = P[0].ctx
    # reducer rows are never needed beyond the precision of the seed rows
    cap = max(r.cap for r in P)
    U = [r for r in P if not r.is_zero()]
    if not U:
        return MacaulayMatrix(ctx, [], [], cap)
    lts = [g.leading_term() for g in G]
    covered = {r.leading_term().exp for r in U}
    heap = []
    seen = set()

    def push_terms(row):
        for e, (w, _) in row._terms.items():
            if e not in covered and (w, e) not in seen:
                seen.add((w, e))
                k = ctx.term_key(w, e)
                heapq.heappush(heap, (_Desc(k), w, e))

    for r in U:
        push_terms(r)
    while heap:
        _, w, e = heapq.heappop(heap)
        if e in covered:
            continue
        covered.add(e)
        if max_degree is not None and sum(e) > max_degree:
            continue
        t = Term(e, w, 1)
        best = None
        for g, lt in zip(G, lts):
            if not divides(lt, t, mode):
                continue
            delta = Term(tuple(a - b for a, b in zip(e, lt.exp)), w - lt.val, 1)
            key = _delta_key(ctx, delta)
            if best is None or key < best[0]:
                best = (key, g, delta)
        if best is not None:
            row = best[1].term_mul(best[2]).truncate(cap)
            if not row.is_zero():
                U.append(row)
                push_terms(row)
    return MacaulayMatrix.from_series(ctx, U)


class _Desc:
    """Reverses the order of a sort key inside a min-heap."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def tate_row_reduction(M: MacaulayMatrix) -> MacaulayMatrix:
    """Echelon form by repeated pivoting on the greatest remaining term.

    The pivot row is the one holding the greatest term (lowest index on a
    tie); the same exponent is then cleared from every other active row
    with an exact multiplier, which is integral because the pivot term is
    the greatest.  Rows come out in pivot order, zero rows last.
    """
    ctx = M.ctx
    p = ctx.prime
    rows = list(M.rows)
    active = set(range(len(rows)))
    # exponent -> active rows holding it
    cols: dict = {}
    for i, r in enumerate(rows):
        for e in r._terms:
            cols.setdefault(e, set()).add(i)
    heap = []
    seq = itertools.count()

    def push(i):
        if not rows[i].is_zero():
            lt = rows[i].leading_term()
            heapq.heappush(heap, (_Desc(ctx.term_key(lt.val, lt.exp)), i, next(seq), lt))

    for i in range(len(rows)):
        push(i)
    order = []
    while heap:
        _, i, _, lt = heapq.heappop(heap)
        if i not in active or rows[i]._terms.get(lt.exp) != (lt.val, lt.unit):
            continue  # stale entry
        active.discard(i)
        order.append(i)
        piv = rows[i]
        for e in piv._terms:
            cols[e].discard(i)
        for j in sorted(cols.get(lt.exp, ())):
            wj, uj = rows[j]._terms[lt.exp]
            prec = min(rows[j].unit_prec(wj), piv.unit_prec(lt.val))
            mod = ppow(p, max(prec, 1))
            q = Term(tuple(0 for _ in lt.exp), wj - lt.val, uj * pow(lt.unit, -1, mod) % mod)
            old = rows[j]
            rows[j] = old - piv.term_mul(q)
            assert lt.exp not in rows[j]._terms
            for e in old._terms:
                if e not in rows[j]._terms:
                    cols[e].discard(j)
            for e in rows[j]._terms:
                cols.setdefault(e, set()).add(j)
            push(j)
    out = [rows[i] for i in order] + [rows[i] for i in sorted(active)]
    return MacaulayMatrix(ctx, list(M.mon), out, M.cap)


def f4_core(gens: Sequence[TateSeries], mode: str, dump_dir: str | None = None) -> list[TateSeries]:
    G = prepare(gens, mode)
    lts = [g.leading_term() for g in G]
    pairs: list = []
    active: set[int] = set()
    for k in range(len(G)):
        pairs = update_pairs(G, lts, pairs, active, k)
    step = 0
    while pairs:
        d = min(pr.lcm_deg for pr in pairs)
        batch = sorted(pr for pr in pairs if pr.lcm_deg == d)
        pairs = [pr for pr in pairs if pr.lcm_deg != d]
        P = [h for pr in batch for h in pair_halves(G, pr.i, pr.j)]
        basis = [G[i] for i in sorted(active)]
        M = symbolic_preprocessing(P, basis, "integral", max_degree=d)
        U = tate_row_reduction(M)
        if dump_dir is not None:
            os.makedirs(dump_dir, exist_ok=True)
            M.write_csv(os.path.join(dump_dir, f"step{step:03d}_matrix.csv"))
            U.write_csv(os.path.join(dump_dir, f"step{step:03d}_reduced.csv"))
        step += 1
        untouched = {id(r) for r in M.rows}
        added = []
        for row in U.rows:
            # rows the elimination never touched are multiples of basis elements
            if row.is_zero() or id(row) in untouched:
                continue
            # terms above the degree bound never met a reducer row
            row = reduce(row, basis, "integral")
            if row.is_zero():
                continue
            added.append(adjoin_form(row, mode))
        for r in added:
            k = len(G)
            G.append(r)
            lts.append(r.leading_term())
            pairs = update_pairs(G, lts, pairs, active, k)
        log.debug("degree %d: %d pairs, matrix %s, %d new", d, len(batch), M.shape, len(added))
    return G


def f4(gens: Sequence[TateSeries], mode: str = "integral", dump_dir: str | None = None) -> list[TateSeries]:
    """Minimal Gröbner basis by the F4 strategy (same output conventions as ``buchberger``)."""
    if gens:
        _require_engine_context(gens[0].ctx)
    return finalize(f4_core(gens, mode, dump_dir), mode)
