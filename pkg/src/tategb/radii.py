"""Log-radii: integer radii by a change of variables, rational radii through eta-pairs.

With log-radii of common denominator D, put ``eta^D = p`` and
``Y_i = eta^(D r_i) X_i``.  In the Y coordinates every radius is 0, and an
element of K{X;r} becomes a series whose coefficients are p-adic numbers
times a single power of eta.  Series store terms by their valuation in
units of 1/D, so this change of coordinates costs nothing: a term's
eta-power is its scaled valuation, and the engines run unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .buchberger import buchberger, buchberger_core, finalize
from .f4 import f4, f4_core
from .series import TateSeries
from .term import check_mode


class DescentError(AssertionError):
    """A minimal basis element computed over the extension does not come from K."""


@dataclass(frozen=True, eq=False)
class EtaSeries:
    """The element ``eta^v * body`` with ``0 <= v < D`` and ``body`` a series over K."""

    v: int
    body: TateSeries

    def __post_init__(self):
        D = self.body.ctx.D
        if not 0 <= self.v < D:
            raise ValueError(f"eta exponent must lie in [0, {D})")
        if self.body.eta_class() != 0:
            raise ValueError("body must have coefficients in K")

    @classmethod
    def from_series(cls, s: TateSeries) -> "EtaSeries":
        v = s.eta_class()
        return cls(v, s.shift_val(-v))

    def to_series(self) -> TateSeries:
        return self.body.shift_val(self.v)

    def valuation(self) -> Fraction:
        """Gauss valuation over the extension: ``v/D + val(body)``."""
        if self.body.is_zero():
            raise ValueError("zero series")
        return Fraction(self.to_series().min_val(), self.body.ctx.D)

    def __mul__(self, other: "EtaSeries") -> "EtaSeries":
        return EtaSeries.from_series(self.to_series() * other.to_series())

    def __eq__(self, other) -> bool:
        return isinstance(other, EtaSeries) and self.v == other.v and self.body == other.body

    __hash__ = None


def normalize_integer_radii(f: TateSeries) -> TateSeries:
    """The same series written in ``X'_i = p^(r_i) X_i``, where every radius is 0.

    Coefficients absorb ``p^(-r . i)``, so ``val_0`` of the result equals
    ``val_r(f)``.
    """
    ctx = f.ctx
    if ctx.D != 1:
        raise ValueError("log-radii must be integers")
    zero = ctx.replace(log_radii=[0] * ctx.nvars)
    # the stored valuations already are val_r of each term
    return TateSeries(zero, f.terms, f.cap)


def eta_lift(f: TateSeries) -> EtaSeries:
    """Pair ``(v, f)`` such that ``eta^v f`` has a Gauss valuation in Z."""
    D = f.ctx.D
    v = 0 if f.is_zero() else (-f.min_val()) % D
    return EtaSeries(v, f)


def eta_gb(gens: Sequence[TateSeries], mode: str = "integral", algorithm: str = "buchberger") -> list[TateSeries]:
    """Minimal Gröbner basis for rational log-radii, computed over the eta-extension.

    Rational mode scales each generator by its eta-lift.  Integral mode keeps
    the generators as they are, since scaling by eta would change the integral
    ideal.  Every minimal element must come back to K{X;r}.
    """
    check_mode(mode)
    if algorithm not in ("buchberger", "f4"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if gens and gens[0].ctx.D == 1:
        return (buchberger if algorithm == "buchberger" else f4)(gens, mode)
    if mode == "rational":
        lifted = [eta_lift(g).to_series() for g in gens if not g.is_zero()]
    else:
        lifted = list(gens)
    core = buchberger_core if algorithm == "buchberger" else f4_core
    G = finalize(core(lifted, mode), mode)
    for g in G:
        if g.eta_class() != 0:
            raise DescentError("minimal GB element not in K{X;r}")
    return G
