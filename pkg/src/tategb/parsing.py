"""Text and JSON formats for series.

Text grammar (one series per line)::

    series := ['-'] term (('+' | '-') term)* ['+' 'O(' P '^' cap ')']
    term   := factor ('*' factor)*
    factor := INT ['^' ['-'] INT] | VAR ['^' INT]

Integer factors multiply into the coefficient; a negative power is only
accepted on the prime itself.  A variable may appear at most once per term
(``x*x`` is rejected, write ``x^2``).  ``cap`` is an integer or ``(a/b)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from .context import AlgebraContext, ppow
from .series import LeftEtaLatticeError, TateSeries, accumulate
from .term import Term

SCHEMA_VERSION = 1


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\()|(\))|(/))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    kinds = ("int", "name", "^", "*", "+", "-", "(", ")", "/")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos}")
        for kind, group in zip(kinds, m.groups()):
            if group is not None:
                out.append((kind, group))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ctx: AlgebraContext):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.index = {name: k for k, name in enumerate(ctx.var_names)}

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None)

    def take(self, kind: str | None = None):
        tok = self.peek()
        if tok[0] is None or (kind is not None and tok[0] != kind):
            raise ParseError(f"expected {kind or 'token'}, found {tok[1]!r}")
        self.i += 1
        return tok

    def signed_int(self) -> int:
        neg = self.peek()[0] == "-"
        if neg:
            self.take("-")
        return -int(self.take("int")[1]) if neg else int(self.take("int")[1])

    def series(self):
        terms: list[tuple[Fraction, tuple]] = []
        cap = None
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        while True:
            if self.peek() == ("name", "O") and self.peek(1)[0] == "(":
                if sign < 0:
                    raise ParseError("the big-oh term cannot be negated")
                cap = self.big_oh()
                if self.peek()[0] is not None:
                    raise ParseError("the big-oh term must come last")
                break
            coeff, exp = self.term()
            terms.append((sign * coeff, exp))
            kind = self.peek()[0]
            if kind is None:
                break
            if kind not in ("+", "-"):
                raise ParseError(f"unexpected {self.peek()[1]!r}")
            sign = 1 if self.take()[0] == "+" else -1
        return terms, cap

    def term(self):
        coeff = Fraction(1)
        exp = [0] * self.ctx.nvars
        seen = set()
        while True:
            kind, text = self.take()
            if kind == "int":
                base = int(text)
                power = 1
                if self.peek()[0] == "^":
                    self.take()
                    power = self.signed_int()
                if power < 0 and base != self.ctx.prime:
                    raise ParseError(f"negative powers are only allowed on the prime {self.ctx.prime}")
                coeff *= Fraction(base) ** power
            elif kind == "name":
                if text not in self.index:
                    raise ParseError(f"unknown variable {text!r}")
                if text in seen:
                    raise ParseError(f"variable {text!r} repeated in a term; use {text}^k")
                seen.add(text)
                power = 1
                if self.peek()[0] == "^":
                    self.take()
                    power = self.signed_int()
                    if power < 0:
                        raise ParseError("negative exponent on a variable")
                exp[self.index[text]] = power
            else:
                raise ParseError(f"unexpected {text!r}")
            if self.peek()[0] != "*":
                return coeff, tuple(exp)
            self.take()

    def big_oh(self) -> int:
        self.take("name")
        self.take("(")
        base = int(self.take("int")[1])
        if base != self.ctx.prime:
            raise ParseError(f"big-oh must be a power of {self.ctx.prime}")
        self.take("^")
        if self.peek()[0] == "(":
            self.take()
            num = self.signed_int()
            self.take("/")
            den = int(self.take("int")[1])
            self.take(")")
            value = Fraction(num, den)
        else:
            value = Fraction(self.signed_int())
        self.take(")")
        scaled = value * self.ctx.D
        if scaled.denominator != 1:
            raise ParseError("big-oh exponent is not a multiple of 1/D")
        return int(scaled)


def parse_series(text: str, ctx: AlgebraContext, cap: int | None = None) -> TateSeries:
    """Parse one series; the big-oh term (if any) fixes the cap, else the context does."""
    if not text.strip():
        raise ParseError("empty series")
    parser = _Parser(text, ctx)
    terms, parsed_cap = parser.series()
    cap = parsed_cap if parsed_cap is not None else (ctx.cap if cap is None else cap)
    acc: dict = {}
    for coeff, exp in terms:
        if coeff == 0:
            continue
        t = Term.from_coefficient(ctx, coeff, exp)
        accumulate(ctx, acc, t.exp, t.val, t.unit, cap)
    return TateSeries(ctx, acc, cap)


def _format_cap(cap: int, D: int) -> str:
    value = Fraction(cap, D)
    return str(value.numerator) if value.denominator == 1 else f"({value.numerator}/{value.denominator})"


def _monomial(exp, names) -> str:
    parts = []
    for e, name in zip(exp, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _digits(n: int, p: int, width: int) -> str:
    out = []
    for _ in range(width):
        n, d = divmod(n, p)
        out.append(str(d) if p <= 10 else f"[{d}]")
    return "..." + "".join(reversed(out))


def format_series(f: TateSeries, digits: bool = False) -> str:
    """Terms greatest first, then the big-oh; ``digits`` shows base-p expansions."""
    ctx = f.ctx
    p, D = ctx.prime, ctx.D
    pieces = []
    for e, w, u in f.items():
        eta, k = (w + ctx.radius_dot(e)) % D, (w + ctx.radius_dot(e)) // D
        rel = f.unit_prec(w)
        if k >= 0:
            width = k + rel
            value = ppow(p, k) * u % ppow(p, width)
            coeff = _digits(value, p, width) if digits else str(value)
        else:
            unit = u % ppow(p, rel)
            coeff = f"{p}^{k}" if unit == 1 else f"{p}^{k}*{_digits(unit, p, rel) if digits else unit}"
        if eta:
            coeff = f"eta^{eta}*{coeff}" if coeff != "1" else f"eta^{eta}"
        mono = _monomial(e, ctx.var_names)
        if not mono:
            pieces.append(coeff)
        elif coeff == "1":
            pieces.append(mono)
        else:
            pieces.append(f"{coeff}*{mono}")
    body = " + ".join(pieces) if pieces else "0"
    return f"{body} + O({p}^{_format_cap(f.cap, D)})"


def series_to_json(f: TateSeries) -> dict[str, Any]:
    """``{"terms": [[exponents, residue, coeff_cap(, shift)], ...], "series_cap": cap}``.

    ``coeff_cap`` is the absolute p-adic precision of the coefficient; a
    fourth entry ``shift < 0`` means the coefficient is ``p^shift * residue``
    with ``residue`` known modulo ``p^coeff_cap``.
    """
    ctx = f.ctx
    p, D = ctx.prime, ctx.D
    terms = []
    for e, w, u in f.items():
        k, eta = divmod(w + ctx.radius_dot(e), D)
        if eta:
            raise LeftEtaLatticeError("series with eta-power coefficients have no JSON form")
        rel = f.unit_prec(w)
        if k >= 0:
            terms.append([list(e), ppow(p, k) * u % ppow(p, k + rel), k + rel])
        else:
            terms.append([list(e), u % ppow(p, rel), rel, k])
    return {"terms": terms, "series_cap": f.cap}


def series_from_json(data: dict[str, Any], ctx: AlgebraContext) -> TateSeries:
    try:
        cap = int(data["series_cap"])
        acc: dict = {}
        for entry in data["terms"]:
            exp, residue, _ = entry[0], int(entry[1]), int(entry[2])
            shift = int(entry[3]) if len(entry) > 3 else 0
            if residue == 0:
                continue
            t = Term.from_coefficient(ctx, Fraction(residue) * Fraction(ctx.prime) ** shift, exp)
            accumulate(ctx, acc, t.exp, t.val, t.unit, cap)
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed series record: {exc}") from exc
    return TateSeries(ctx, acc, cap)


def context_to_json(ctx: AlgebraContext) -> dict[str, Any]:
    return {
        "prime": ctx.prime,
        "vars": list(ctx.var_names),
        "log_radii": [str(r) for r in ctx.log_radii],
        "order": ctx.order,
        "prec": ctx.prec_cap,
    }


def context_from_json(data: dict[str, Any]) -> AlgebraContext:
    from .context import new_context

    try:
        return new_context(
            int(data["prime"]),
            data["vars"],
            [Fraction(r) for r in data["log_radii"]],
            data["order"],
            int(data["prec"]),
        )
    except KeyError as exc:
        raise ParseError(f"missing context field {exc}") from exc
