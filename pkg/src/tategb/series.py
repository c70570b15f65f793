"""Tate series at finite precision.

A series is a finite map ``exponent -> (val, unit)`` plus one absolute cap
``cap`` (scaled units).  The term at exponent ``i`` stands for
``eta^val * unit * Y^i`` in the coordinates ``Y = eta^(D r) X`` where
``eta^D = p``; for ordinary elements of K{X;r} this is just ``a X^i`` with
``val = D*val(a) - D*(r . i)``.  Units are known modulo ``p**ceil((cap - val)/D)``
and terms with ``val >= cap`` are not stored.

Keeping valuations first means one code path serves integral and rational
log-radii alike: with a denominator ``D > 1`` the same machinery manipulates
the pairs ``eta^v f`` without building the extension field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .context import (
    AlgebraContext,
    AtLeast,
    NotInvertibleError,
    PrecisionError,
    Valuation,
    ceil_div,
    ppow,
    split_unit,
)
from .term import Term



class LeftEtaLatticeError(ArithmeticError):
    """Two terms whose eta-classes differ were added together."""


def accumulate(ctx: AlgebraContext, acc: dict, exp, w: int, u: int, cap: int) -> None:
    """Add the term ``(w, u)`` at ``exp`` into ``acc``, working at ``cap``."""
    if w >= cap:
        return
    p, D = ctx.prime, ctx.D
    old = acc.get(exp)
    if old is None:
        if u % p == 0:
            if u == 0:
                return
            k, u = split_unit(u, p)
            w += D * k
            if w >= cap:
                return
        acc[exp] = (w, u % ppow(p, ceil_div(cap - w, D)))
        return
    w0, u0 = old
    if w0 == w:
        k, s = w, u0 + u
    elif w0 < w:
        d, rem = divmod(w - w0, D)
        if rem:
            raise LeftEtaLatticeError(f"cannot add terms of valuations {w0}/{D} and {w}/{D}")
        k, s = w0, u0 + u * ppow(p, d)
    else:
        d, rem = divmod(w0 - w, D)
        if rem:
            raise LeftEtaLatticeError(f"cannot add terms of valuations {w0}/{D} and {w}/{D}")
        k, s = w, u0 * ppow(p, d) + u
    m = ceil_div(cap - k, D)
    if m <= 0:
        del acc[exp]
        return
    s %= ppow(p, m)
    if s == 0:
        del acc[exp]
        return
    while s % p == 0:
        s //= p
        k += D
    if k >= cap:
        del acc[exp]
    else:
        acc[exp] = (k, s)


def _normalized(ctx: AlgebraContext, terms: Mapping, cap: int) -> dict:
    p, D, n = ctx.prime, ctx.D, ctx.nvars
    out = {}
    for exp, (w, u) in terms.items():
        exp = tuple(exp)
        if len(exp) != n or min(exp) < 0:
            raise ValueError(f"bad exponent {exp} for {n} variables")
        if u == 0:
            continue
        k, u = split_unit(u, p)
        w += D * k
        if w >= cap:
            continue
        u %= ppow(p, ceil_div(cap - w, D))
        out[exp] = (w, u)
    return out


class TateSeries:
    """Immutable finite-precision element of a Tate algebra (or of its eta-lattice)."""

    __slots__ = ("ctx", "cap", "_terms", "_order")

    def __init__(self, ctx: AlgebraContext, terms: Mapping | None = None, cap: int | None = None):
        self.ctx = ctx
        self.cap = ctx.cap if cap is None else cap
        self._terms = _normalized(ctx, terms or {}, self.cap)
        self._order = None

    @classmethod
    def _make(cls, ctx: AlgebraContext, terms: dict, cap: int) -> "TateSeries":
        obj = cls.__new__(cls)
        obj.ctx, obj.cap, obj._terms, obj._order = ctx, cap, terms, None
        return obj

    # construction helpers

    @classmethod
    def from_coefficients(cls, ctx: AlgebraContext, coeffs: Mapping, cap: int | None = None) -> "TateSeries":
        """Series from ``{exponent: coefficient}`` with exact integer or p-power fraction coefficients."""
        terms = {}
        for exp, a in coeffs.items():
            if Fraction(a) == 0:
                continue
            t = Term.from_coefficient(ctx, a, exp)
            terms[t.exp] = (t.val, t.unit)
        return cls(ctx, terms, cap)

    @classmethod
    def zero(cls, ctx: AlgebraContext, cap: int | None = None) -> "TateSeries":
        return cls._make(ctx, {}, ctx.cap if cap is None else cap)

    @classmethod
    def constant(cls, ctx: AlgebraContext, a, cap: int | None = None) -> "TateSeries":
        return cls.from_coefficients(ctx, {(0,) * ctx.nvars: a}, cap)

    @classmethod
    def from_term(cls, ctx: AlgebraContext, t: Term, cap: int | None = None) -> "TateSeries":
        return cls(ctx, {t.exp: (t.val, t.unit)}, cap)

    # inspection

    @property
    def terms(self) -> Mapping:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> list:
        """Exponents sorted by decreasing term order."""
        if self._order is None:
            key = self.ctx.term_key
            t = self._terms
            self._order = sorted(t, key=lambda e: key(t[e][0], e), reverse=True)
        return self._order

    def items(self) -> Iterator[tuple]:
        """``(exp, val, unit)`` triples, greatest term first."""
        t = self._terms
        for e in self.exponents():
            w, u = t[e]
            yield e, w, u

    def term_list(self) -> list[Term]:
        return [Term(e, w, u) for e, w, u in self.items()]

    def unit_prec(self, w: int) -> int:
        return ceil_div(self.cap - w, self.ctx.D)

    def gauss_val(self) -> Valuation:
        if not self._terms:
            return AtLeast(self.cap)
        return min(w for w, _ in self._terms.values())

    def min_val(self) -> int:
        """Gauss valuation, with the cap standing in for the zero series."""
        if not self._terms:
            return self.cap
        return min(w for w, _ in self._terms.values())

    def leading_term(self) -> Term:
        if not self._terms:
            raise PrecisionError("cannot determine the leading term of a series that is zero at this precision")
        key = self.ctx.term_key
        t = self._terms
        if self._order is not None:
            e = self._order[0]
        else:
            e = max(t, key=lambda e: key(t[e][0], e))
        w, u = t[e]
        return Term(e, w, u)

    def eta_class(self) -> int | None:
        """Common residue of ``val + D*(r . exp)`` modulo D (0 for elements of K{X;r})."""
        ctx = self.ctx
        classes = {(w + ctx.radius_dot(e)) % ctx.D for e, (w, _) in self._terms.items()}
        if not classes:
            return 0
        if len(classes) > 1:
            raise LeftEtaLatticeError("series mixes eta-classes")
        return classes.pop()

    def coefficient(self, exp) -> Fraction:
        """Coefficient of ``X^exp`` as an exact representative (elements of K{X;r} only)."""
        exp = tuple(exp)
        if exp not in self._terms:
            return Fraction(0)
        w, u = self._terms[exp]
        ctx = self.ctx
        k, s = divmod(w + ctx.radius_dot(exp), ctx.D)
        if s:
            raise LeftEtaLatticeError("coefficient is not in K")
        return Fraction(u) * Fraction(ctx.prime) ** k

    # comparisons

    def __eq__(self, other) -> bool:
        if not isinstance(other, TateSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.cap == other.cap and self._terms == other._terms

    __hash__ = None

    def equal_at(self, other: "TateSeries", cap: int) -> bool:
        """Agreement after truncating both to ``cap``."""
        return (self.truncate(cap) - other.truncate(cap)).is_zero()

    # arithmetic

    def _check(self, other: "TateSeries"):
        if not isinstance(other, TateSeries):
            raise TypeError(f"expected a TateSeries, got {type(other).__name__}")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ValueError("series live in different algebras")

    def __add__(self, other: "TateSeries") -> "TateSeries":
        return self._combine(other, 1)

    def __sub__(self, other: "TateSeries") -> "TateSeries":
        return self._combine(other, -1)

    def _combine(self, other, sign):
        self._check(other)
        ctx = self.ctx
        cap = min(self.cap, other.cap)
        acc: dict = {}
        for e, (w, u) in self._terms.items():
            accumulate(ctx, acc, e, w, u, cap)
        for e, (w, u) in other._terms.items():
            accumulate(ctx, acc, e, w, sign * u, cap)
        return TateSeries._make(ctx, acc, cap)

    def __neg__(self) -> "TateSeries":
        p = self.ctx.prime
        terms = {}
        for e, (w, u) in self._terms.items():
            terms[e] = (w, -u % ppow(p, self.unit_prec(w)))
        return TateSeries._make(self.ctx, terms, self.cap)

    def term_mul(self, t: Term) -> "TateSeries":
        """Multiply by an exact term; the cap moves by the term's valuation."""
        ctx = self.ctx
        p, D = ctx.prime, ctx.D
        cap = self.cap + t.val
        te, tw, tu = t.exp, t.val, t.unit
        terms = {}
        for e, (w, u) in self._terms.items():
            m = ceil_div(self.cap - w, D)
            terms[tuple(a + b for a, b in zip(e, te))] = (w + tw, u * tu % ppow(p, m))
        return TateSeries._make(ctx, terms, cap)

    def shift_val(self, dw: int) -> "TateSeries":
        """Multiply by ``eta^dw`` (by ``p^(dw/D)`` when D divides dw)."""
        terms = {e: (w + dw, u) for e, (w, u) in self._terms.items()}
        return TateSeries._make(self.ctx, terms, self.cap + dw)

    def scale_unit(self, u0: int) -> "TateSeries":
        """Multiply by a p-adic unit given by an integer representative."""
        p = self.ctx.prime
        terms = {}
        for e, (w, u) in self._terms.items():
            terms[e] = (w, u * u0 % ppow(p, self.unit_prec(w)))
        return TateSeries._make(self.ctx, terms, self.cap)

    def __mul__(self, other):
        if isinstance(other, Term):
            return self.term_mul(other)
        if isinstance(other, int):
            if other == 0:
                return TateSeries.zero(self.ctx, self.cap)
            return self.term_mul(Term.from_coefficient(self.ctx, other, (0,) * self.ctx.nvars))
        self._check(other)
        cap = min(self.cap + other.min_val(), other.cap + self.min_val())
        return TateSeries._make(self.ctx, _mul_raw(self.ctx, self._terms, other._terms, cap), cap)

    __rmul__ = __mul__

    def truncate(self, cap: int) -> "TateSeries":
        """Forget everything at or beyond ``cap`` (never raises the cap)."""
        cap = min(cap, self.cap)
        return TateSeries(self.ctx, self._terms, cap)

    def monic(self) -> "TateSeries":
        """Scale by a unit so the leading coefficient is a pure power of eta (or p)."""
        lt = self.leading_term()
        if lt.unit == 1:
            return self
        mod = ppow(self.ctx.prime, self.unit_prec(lt.val))
        return self.scale_unit(pow(lt.unit, -1, mod))

    def inverse_of_unit(self) -> "TateSeries":
        """Inverse of a series whose constant term strictly dominates every other term.

        Newton iteration ``g <- g + g (1 - f g)``; each round doubles the
        valuation of the error.
        """
        ctx = self.ctx
        zero = (0,) * ctx.nvars
        if zero not in self._terms:
            raise NotInvertibleError("not invertible in this ring at this precision")
        w0, u0 = self._terms[zero]
        if any(w <= w0 for e, (w, _) in self._terms.items() if e != zero):
            raise NotInvertibleError("not invertible in this ring at this precision")
        target = self.cap - 2 * w0
        p, D = ctx.prime, ctx.D
        big = ppow(p, ceil_div(self.cap - w0, D) + 1)
        g = {zero: (-w0, pow(u0, -1, big))}
        one = {zero: (0, 1)}
        while True:
            fg = _mul_raw(ctx, self._terms, g, target + w0)
            err: dict = dict(one)
            for e, (w, u) in fg.items():
                accumulate(ctx, err, e, w, -u, target + w0)
            if not err:
                break
            corr = _mul_raw(ctx, g, err, target)
            for e, (w, u) in corr.items():
                accumulate(ctx, g, e, w, u, target)
        return TateSeries(ctx, g, target)

    # display

    def __repr__(self) -> str:
        return f"TateSeries({self})"

    def __str__(self) -> str:
        from .parsing import format_series

        return format_series(self)


def _mul_raw(ctx: AlgebraContext, a: Mapping, b: Mapping, cap: int) -> dict:
    acc: dict = {}
    for e1, (w1, u1) in a.items():
        for e2, (w2, u2) in b.items():
            w = w1 + w2
            if w < cap:
                accumulate(ctx, acc, tuple(x + y for x, y in zip(e1, e2)), w, u1 * u2, cap)
    return acc


def series_from_terms(ctx: AlgebraContext, terms: Sequence[Term], cap: int | None = None) -> TateSeries:
    acc: dict = {}
    cap = ctx.cap if cap is None else cap
    for t in terms:
        accumulate(ctx, acc, t.exp, t.val, t.unit, cap)
    return TateSeries._make(ctx, acc, cap)
