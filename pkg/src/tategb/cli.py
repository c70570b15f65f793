"""Command-line front end: ``tategb groebner|reduce|member|info|verify``."""

from __future__ import annotations

import argparse
import functools
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .buchberger import buchberger, buchberger_criterion, residue_gb
from .context import AlgebraContext, new_context
from .division import reduce
from .f4 import f4
from .oracle import classical_criterion
from .parsing import (
    SCHEMA_VERSION,
    ParseError,
    context_from_json,
    context_to_json,
    format_series,
    parse_series,
    series_from_json,
    series_to_json,
)
from .radii import DescentError, eta_gb
from .series import TateSeries

RINGS = {"tate": "rational", "integral": "integral"}


class UsageError(Exception):
    pass


def _add_context_flags(p: argparse.ArgumentParser):
    p.add_argument("--prime", type=int, help="residue characteristic p (default 2)")
    p.add_argument("--prec", type=int, help="absolute precision cap N, terms are known mod p^N (default 20)")
    p.add_argument("--vars", help="comma-separated variable names (default: inferred from the input)")
    p.add_argument("--log-radii", help="comma-separated rationals, one per variable (default all 0)")
    p.add_argument("--order", choices=["lex", "grevlex"], help="monomial order (default grevlex)")
    p.add_argument("--ring", choices=sorted(RINGS), help="tate: K{X;r} (default); integral: its integer ring")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--digits", action="store_true", help="print coefficients as base-p digit strings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tategb", description="Gröbner bases in Tate algebras at finite p-adic precision")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("groebner", help="compute a minimal Gröbner basis")
    _add_context_flags(g)
    g.add_argument("--input", help="file with one series per line ('#' starts a comment); '-' for stdin")
    g.add_argument("-e", "--expr", action="append", default=[], help="a generator (repeatable)")
    g.add_argument("--algorithm", choices=["buchberger", "f4"], default="buchberger")
    g.add_argument("--dump-matrices", metavar="DIR", help="write every F4 matrix as CSV into DIR")

    for name, text in (("reduce", "remainder of division by a basis"), ("member", "ideal membership test")):
        c = sub.add_parser(name, help=text)
        _add_context_flags(c)
        c.add_argument("-e", "--expr", action="append", default=[], help="series to test (repeatable)")
        c.add_argument("--input", help="file of series to test")
        c.add_argument("--basis", required=True, help="Gröbner basis file (text or the JSON output of groebner)")

    i = sub.add_parser("info", help="show the context and per-series data")
    _add_context_flags(i)
    i.add_argument("-e", "--expr", action="append", default=[])
    i.add_argument("--input")

    v = sub.add_parser("verify", help="re-check a stored Gröbner basis")
    _add_context_flags(v)
    v.add_argument("--basis", required=True, help="basis file (text or JSON)")
    v.add_argument("--input", help="generators that must reduce to zero (optional if the JSON holds them)")
    return parser


# input handling


@functools.lru_cache(maxsize=None)
def _stdin() -> str:
    # several options may name "-"; stdin can only be consumed once
    return sys.stdin.read()


def read_text(path: str) -> str:
    try:
        text = _stdin() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return text


def series_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def infer_vars(texts: Sequence[str]) -> list[str]:
    names = set()
    for t in texts:
        names.update(n for n in _NAME.findall(t) if n not in ("O", "eta"))
    return sorted(names) or ["x"]


def _parse_radii(text: str | None, n: int) -> list[Fraction]:
    if text is None:
        return [Fraction(0)] * n
    try:
        radii = [Fraction(s.strip()) for s in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --log-radii: {exc}") from exc
    if len(radii) != n:
        raise UsageError(f"--log-radii has {len(radii)} entries for {n} variables")
    return radii


def make_context(args, texts: Sequence[str], stored: AlgebraContext | None = None) -> AlgebraContext:
    """Flags win over a context stored in a JSON file, which wins over defaults."""
    if stored is not None:
        base = dict(
            prime=stored.prime,
            var_names=list(stored.var_names),
            log_radii=list(stored.log_radii),
            order=stored.order,
            prec_cap=stored.prec_cap,
        )
    else:
        base = dict(prime=2, var_names=None, log_radii=None, order="grevlex", prec_cap=20)
    if args.prime is not None:
        base["prime"] = args.prime
    if args.prec is not None:
        base["prec_cap"] = args.prec
    if args.order is not None:
        base["order"] = args.order
    if args.vars is not None:
        base["var_names"] = [v.strip() for v in args.vars.split(",") if v.strip()]
    if base["var_names"] is None:
        base["var_names"] = infer_vars(texts)
    n = len(base["var_names"])
    if args.log_radii is not None or base["log_radii"] is None or len(base["log_radii"]) != n:
        base["log_radii"] = _parse_radii(args.log_radii, n)
    try:
        return new_context(base["prime"], base["var_names"], base["log_radii"], base["order"], base["prec_cap"])
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


class SeriesSource:
    """Series given as text lines or as JSON records (with their own context)."""

    def __init__(self, texts=(), records=(), ctx_json=None, extra=None):
        self.texts = list(texts)
        self.records = list(records)
        self.ctx_json = ctx_json
        self.extra = extra or {}

    @classmethod
    def load(cls, path: str, key: str = "basis") -> "SeriesSource":
        text = read_text(path)
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise UsageError(f"{path}: invalid JSON ({exc.msg})") from exc
            if data.get("schema") != SCHEMA_VERSION:
                raise UsageError(f"{path}: unsupported schema {data.get('schema')!r}")
            return cls(records=data.get(key, []), ctx_json=data.get("context"), extra=data)
        return cls(texts=series_lines(text))

    def stored_context(self):
        return context_from_json(self.ctx_json) if self.ctx_json else None

    def series(self, ctx: AlgebraContext) -> list[TateSeries]:
        out = [parse_series(t, ctx) for t in self.texts]
        out += [series_from_json(r, ctx) for r in self.records]
        return out

    def __len__(self):
        return len(self.texts) + len(self.records)


def gather_inputs(args) -> SeriesSource:
    src = SeriesSource.load(args.input, key="generators") if getattr(args, "input", None) else SeriesSource()
    src.texts += list(getattr(args, "expr", []) or [])
    return src


def mode_of(args, stored: str | None = None) -> str:
    """The engine mode for ``--ring``, falling back to a ring stored with a basis."""
    if args.ring is None:
        args.ring = stored or "tate"
    return RINGS[args.ring]


# output


def show(f: TateSeries, args) -> str:
    return format_series(f, digits=args.digits)


def emit(args, text_lines: list[str], payload: dict):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def low_precision(G: Sequence[TateSeries]) -> list[int]:
    """Indices of elements with less than one digit of relative precision left."""
    return [k for k, g in enumerate(G) if not g.is_zero() and g.cap - g.min_val() <= g.ctx.D]


# commands


def cmd_groebner(args) -> int:
    src = gather_inputs(args)
    if len(src) == 0:
        raise UsageError("no generators given (use --input or -e)")
    ctx = make_context(args, src.texts, src.stored_context())
    gens = src.series(ctx)
    mode = mode_of(args)
    if args.dump_matrices and args.algorithm != "f4":
        raise UsageError("--dump-matrices needs --algorithm f4")
    if ctx.D > 1:
        G = eta_gb(gens, mode, args.algorithm)
    elif args.algorithm == "f4":
        G = f4(gens, mode, dump_dir=args.dump_matrices)
    else:
        G = buchberger(gens, mode)
    likely = mode == "rational"
    lines = [show(g, args) for g in G]
    if likely:
        lines.insert(0, "# likely Gröbner basis (computed over a fractional integral ideal)")
    for k in low_precision(G):
        print(f"warning: element {k + 1} has almost no precision left", file=sys.stderr)
    payload = {
        "schema": SCHEMA_VERSION,
        "context": context_to_json(ctx),
        "ring": args.ring,
        "algorithm": args.algorithm,
        "generators": [series_to_json(g) for g in gens],
        "basis": [series_to_json(g) for g in G],
        "likely_gb": likely,
    }
    emit(args, lines, payload)
    return 0


def _basis_and_targets(args):
    basis_src = SeriesSource.load(args.basis)
    targets = gather_inputs(args)
    if len(basis_src) == 0:
        raise UsageError("empty basis file")
    if len(targets) == 0:
        raise UsageError("nothing to test (use -e or --input)")
    ctx = make_context(args, basis_src.texts + targets.texts, basis_src.stored_context())
    mode = mode_of(args, basis_src.extra.get("ring"))
    return ctx, mode, basis_src.series(ctx), targets.series(ctx)


def cmd_reduce(args) -> int:
    ctx, mode, G, fs = _basis_and_targets(args)
    rems = [reduce(f, G, mode) for f in fs]
    payload = {"schema": SCHEMA_VERSION, "context": context_to_json(ctx), "ring": args.ring,
               "remainders": [series_to_json(r) for r in rems]}
    emit(args, [show(r, args) for r in rems], payload)
    return 0


def cmd_member(args) -> int:
    ctx, mode, G, fs = _basis_and_targets(args)
    answers = [reduce(f, G, mode).is_zero() for f in fs]
    payload = {"schema": SCHEMA_VERSION, "context": context_to_json(ctx), "ring": args.ring, "member": answers}
    emit(args, ["true" if a else "false" for a in answers], payload)
    return 0


def cmd_info(args) -> int:
    src = gather_inputs(args)
    ctx = make_context(args, src.texts, src.stored_context())
    mode_of(args)
    fs = src.series(ctx)
    lines = [
        f"prime {ctx.prime}, precision O({ctx.prime}^{ctx.prec_cap})",
        f"variables {', '.join(ctx.var_names)}, log-radii {', '.join(str(r) for r in ctx.log_radii)}",
        f"order {ctx.order}, ring {args.ring}" + (", eta-extension of degree %d" % ctx.D if ctx.D > 1 else ""),
    ]
    rows = []
    for f in fs:
        lt = None if f.is_zero() else f.leading_term()
        lead = "-" if lt is None else show(TateSeries.from_term(ctx, lt, f.cap), args).rsplit(" + O(", 1)[0]
        val = f.gauss_val()
        val = str(val) if not isinstance(val, int) else str(Fraction(val, ctx.D))
        lines.append(f"{show(f, args)}    val {val}, leading term {lead}")
        rows.append({"series": series_to_json(f), "valuation": val, "leading_term": lead})
    emit(args, lines, {"schema": SCHEMA_VERSION, "context": context_to_json(ctx), "series": rows})
    return 0


def cmd_verify(args) -> int:
    basis_src = SeriesSource.load(args.basis)
    if len(basis_src) == 0:
        raise UsageError("empty basis file")
    gens_src = SeriesSource.load(args.input, key="generators") if args.input else None
    if gens_src is None and basis_src.extra.get("generators"):
        gens_src = SeriesSource(records=basis_src.extra["generators"])
    texts = basis_src.texts + (gens_src.texts if gens_src else [])
    ctx = make_context(args, texts, basis_src.stored_context())
    mode = mode_of(args, basis_src.extra.get("ring"))
    G = basis_src.series(ctx)
    checks = [("S-polynomials reduce to zero", buchberger_criterion(G, mode))]
    if gens_src is not None:
        gens = gens_src.series(ctx)
        checks.append(("generators reduce to zero", all(reduce(f, G, mode).is_zero() for f in gens)))
    if mode == "rational" and ctx.radii_zero and all(g.min_val() == 0 for g in G):
        checks.append(("residue basis passes the classical criterion",
                       classical_criterion(residue_gb(G), ctx.prime, ctx.order)))
    ok = all(c[1] for c in checks)
    lines = [f"{'ok  ' if passed else 'FAIL'} {name}" for name, passed in checks]
    emit(args, lines, {"schema": SCHEMA_VERSION, "ok": ok, "checks": dict(checks)})
    return 0 if ok else 1


COMMANDS = {
    "groebner": cmd_groebner,
    "reduce": cmd_reduce,
    "member": cmd_member,
    "info": cmd_info,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    _stdin.cache_clear()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DescentError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
