"""Terms and the valuation-aware term order.

A term ``a X^i`` is stored by its exponent, its scaled valuation
``D*val(a) - D*(r . i)`` and a p-adic unit.  Two terms with the same
valuation and exponent differ by a unit of the integer ring and are
"equal" for the preorder; such a pair is called an equal class below.

Divisibility comes in two flavours: ``"rational"`` (in the monoid of terms
over the field, only exponents matter) and ``"integral"`` (in the monoid of
terms of nonnegative valuation, the cofactor must be integral as well).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .context import AlgebraContext, ceil_div, split_unit

MODES = ("rational", "integral")


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be 'rational' or 'integral', not {mode!r}")
    return mode


@dataclass(frozen=True)
class Term:
    exp: tuple[int, ...]
    val: int
    unit: int = 1

    @classmethod
    def from_coefficient(cls, ctx: AlgebraContext, coeff, exp: Sequence[int]) -> "Term":
        """Build ``coeff * X^exp`` from an exact integer or p-power fraction."""
        coeff = Fraction(coeff)
        if coeff == 0:
            raise ValueError("a term needs a nonzero coefficient")
        p = ctx.prime
        kn, un = split_unit(coeff.numerator, p)
        kd, ud = split_unit(coeff.denominator, p)
        if ud != 1:
            raise ValueError("coefficients must be integers divided by powers of p")
        exp = tuple(exp)
        return cls(exp, ctx.D * (kn - kd) - ctx.radius_dot(exp), un)

    def __mul__(self, other: "Term") -> "Term":
        return Term(
            tuple(a + b for a, b in zip(self.exp, other.exp)),
            self.val + other.val,
            self.unit * other.unit,
        )

    def degree(self) -> int:
        return sum(self.exp)


def term_val(t: Term) -> int:
    return t.val


def term_degree(t: Term) -> int:
    return sum(t.exp)


def term_key(t: Term, ctx: AlgebraContext):
    return ctx.term_key(t.val, t.exp)


def term_cmp(t1: Term, t2: Term, ctx: AlgebraContext) -> int:
    """-1, 0 or 1; 0 means the two terms are in the same equal class."""
    k1, k2 = term_key(t1, ctx), term_key(t2, ctx)
    return (k1 > k2) - (k1 < k2)


def exp_divides(e1: Sequence[int], e2: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def divides_T(t1: Term, t2: Term) -> bool:
    return exp_divides(t1.exp, t2.exp)


def divides_To(t1: Term, t2: Term) -> bool:
    return t1.val <= t2.val and exp_divides(t1.exp, t2.exp)


def divides(t1: Term, t2: Term, mode: str) -> bool:
    if mode == "integral":
        return divides_To(t1, t2)
    return divides_T(t1, t2)


def same_class(t1: Term, t2: Term, mode: str) -> bool:
    """Mutual divisibility in the chosen monoid."""
    if mode == "integral":
        return t1.val == t2.val and t1.exp == t2.exp
    return t1.exp == t2.exp


def _require_zero_radii(ctx: AlgebraContext):
    if not ctx.radii_zero:
        raise ValueError("gcd and lcm of terms need zero log-radii")


def _gcd(t1: Term, t2: Term) -> Term:
    return Term(tuple(map(min, t1.exp, t2.exp)), min(t1.val, t2.val), 1)


def _lcm(t1: Term, t2: Term) -> Term:
    return Term(tuple(map(max, t1.exp, t2.exp)), max(t1.val, t2.val), 1)


def gcd_term(t1: Term, t2: Term, ctx: AlgebraContext) -> Term:
    _require_zero_radii(ctx)
    return _gcd(t1, t2)


def lcm_term(t1: Term, t2: Term, ctx: AlgebraContext) -> Term:
    _require_zero_radii(ctx)
    return _lcm(t1, t2)


def quotient_term(t1: Term, t2: Term, p: int, unit_prec: int) -> Term:
    """The exact term ``q`` with ``q * t2 == t1`` (units taken modulo ``p**unit_prec``).

    The exponent of ``t2`` must divide that of ``t1``; the valuation of
    ``q`` may be negative, callers decide whether that is admissible.
    """
    mod = p ** max(unit_prec, 1)
    exp = tuple(a - b for a, b in zip(t1.exp, t2.exp))
    if min(exp) < 0:
        raise ArithmeticError("exponent does not divide")
    return Term(exp, t1.val - t2.val, t1.unit * pow(t2.unit, -1, mod) % mod)


def skeleton(ts: Iterable[Term], mode: str, ctx: AlgebraContext) -> list[Term]:
    """Minimal elements of a finite set of terms under divisibility.

    One representative is kept per equal class: the first one after sorting
    by the term order, greatest first.
    """
    check_mode(mode)
    ordered = sorted(ts, key=lambda t: term_key(t, ctx), reverse=True)
    out: list[Term] = []
    for t in ordered:
        if any(same_class(s, t, mode) for s in out):
            continue
        if any(divides(s, t, mode) and not divides(t, s, mode) for s in ordered):
            continue
        out.append(t)
    return out


def skel_geq(v: int, ctx: AlgebraContext) -> list[Term]:
    """Skeleton of the fractional ideal of terms of valuation >= v/D (one variable).

    For each exponent ``i`` the cheapest admissible power of p gives the term
    ``p^a X^i`` of scaled valuation ``D*a - r*i``; an exponent contributes a
    minimal element exactly when that valuation beats every smaller exponent.
    The valuations are periodic in ``i`` with period dividing ``D``, so the
    scan stops after ``D`` consecutive exponents bring nothing new.
    """
    if ctx.nvars != 1:
        raise NotImplementedError("skeleton of T^{>=v} is only available for one variable")
    D, r = ctx.D, ctx.log_radii_num[0]
    out: list[Term] = []
    best = None
    idle = 0
    i = 0
    while idle < D:
        a = ceil_div(v + r * i, D)
        w = D * a - r * i
        if best is None or w < best:
            best = w
            out.append(Term((i,), w, 1))
            idle = 0
        else:
            idle += 1
        i += 1
    return skeleton(out, "integral", ctx)
