"""Command-line front end.

Exit codes: 0 success, 1 verification gate failure, 2 domain or numeric
error, 3 parse or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from .errors import GrowthError, ParseError
from .indicators import (
    GridSpec,
    default_order_grid,
    default_type_grid,
    order_ratios,
    summarize,
    type_ratios,
)
from .integralrep import classify, default_classify_grid, lemma_ratio, transition
from .literals import model_literal, parse_model, parse_scale, scale_literal
from .nevanlinna import breakdown
from .verify import SuiteConfig, gates_pass, run_suite, standard_catalog

EXIT_OK, EXIT_GATE, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2, 3

GRAMMAR = [
    ("model", "poly(c0,c1,...)", "polynomial, ascending coefficients"),
    ("model", "exppow(c=C,n=N)", "exp(C z^N)"),
    ("model", "exptower(k=K)", "K-fold exponential of z"),
    ("model", "rat(zeros=[..];poles=[..];scale=S)", "factored rational function"),
    ("model", "sum(M1,M2) / prod(M1,M2)", "sum or product of two models"),
    ("scale", "iter(m=M,n=N,a=A,c=C)", "exp^[M](C (log^[N] x)^A)"),
    ("scale", "exp", "alias for iter(m=1,n=0,a=1,c=1)"),
    ("scale", "sinlog", "exp(x (2 + sin log x))"),
    ("scale", "maxmod(MODEL)", "maximum modulus of a model"),
    ("scale", "charac(MODEL)", "Nevanlinna characteristic of a model"),
    ("scale", "tab(xs=[..];ys=[..])", "monotone cubic interpolation of samples"),
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- serialization -------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def to_json(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits and stable key order."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        s = _fmt_float(obj)
        return s if math.isfinite(obj) else f'"{s}"'
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            out[name] = ";".join(_cell(v) for v in value)
        else:
            out[name] = value
    return out


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ":".join(_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    if v is None:
        return ""
    return str(v)


def to_csv(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    header: list[str] = []
    for r in flat:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in flat:
        writer.writerow([_cell(r.get(k)) for k in header])
    return buf.getvalue()


def to_table(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    if len(flat) == 1:
        width = max((len(k) for k in flat[0]), default=0)
        return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in flat[0].items())
    header: list[str] = []
    for r in flat:
        header.extend(k for k in r if k not in header)
    cells = [[_cell(r.get(k)) for k in header] for r in flat]
    widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(payload, fmt: str, rows: list[dict] = None) -> str:
    if fmt == "json":
        return to_json(payload) + "\n"
    rows = rows if rows is not None else [payload]
    return to_csv(rows) if fmt == "csv" else to_table(rows)


# --- config --------------------------------------------------------------------


def read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment."""
    p = Path(path)
    if not p.exists():
        bundled = resources.files("relgrowth") / "data" / p.name
        if bundled.is_file():
            text = bundled.read_text()
        else:
            raise ParseError(f"config file {path} not found")
    else:
        text = p.read_text()
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def _parse_grid(text: str, q_anchor: int) -> GridSpec:
    try:
        t0, h, J = text.split(":")
        return GridSpec(q_anchor, float(t0), float(h), int(J))
    except ValueError as exc:
        raise ParseError(f"--grid expects t0:h:J, got {text!r}") from exc


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise ParseError(f"--krange expects lo:hi, got {text!r}") from exc


def _parse_point(text: str):
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return math.inf
    try:
        z = complex(t)
    except ValueError as exc:
        raise ParseError(f"bad value {text!r}") from exc
    return z.real if z.imag == 0 else z


# --- commands ------------------------------------------------------------------


def _estimate_record(est) -> dict:
    return {
        "value": est.value,
        "spread": est.spread,
        "envelope_slope": est.envelope_slope,
        "divergent": est.divergent,
    }


def cmd_indicators(args) -> tuple[object, list]:
    alpha, beta = parse_scale(args.alpha), parse_scale(args.beta)
    p, q = args.p, args.q
    if args.grid:
        order_grid = _parse_grid(args.grid, args.q_anchor if args.q_anchor is not None else q + 1)
        type_grid = _parse_grid(args.grid, args.q_anchor if args.q_anchor is not None else q)
    else:
        order_grid = default_order_grid(q, alpha, beta)
        type_grid = default_type_grid(q, alpha, beta)
    o_ratios = order_ratios(alpha, beta, p, q, order_grid)
    rho = summarize("rho", o_ratios, order_grid.params())
    lam = summarize("lambda", o_ratios, order_grid.params())
    rho_exp = args.rho if args.rho is not None else rho.value
    lam_exp = args.lam if args.lam is not None else lam.value
    s_ratios = type_ratios(alpha, beta, p, q, rho_exp, type_grid)
    w_ratios = s_ratios if lam_exp == rho_exp else type_ratios(alpha, beta, p, q, lam_exp, type_grid)
    ts = type_grid.params()
    record = {
        "alpha": scale_literal(alpha),
        "beta": scale_literal(beta),
        "p": p,
        "q": q,
        "rho": _estimate_record(rho),
        "lambda": _estimate_record(lam),
        "sigma": _estimate_record(summarize("sigma", s_ratios, ts)),
        "sigma_bar": _estimate_record(summarize("sigma_bar", s_ratios, ts)),
        "tau": _estimate_record(summarize("tau", w_ratios, ts)),
        "tau_bar": _estimate_record(summarize("tau_bar", w_ratios, ts)),
    }
    if args.series:
        rows = [
            {"t": float(t), "order_ratio": float(a)}
            for t, a in zip(order_grid.params(), o_ratios)
        ]
        rows += [
            {"t": float(t), "type_ratio": float(b)} for t, b in zip(ts, s_ratios)
        ]
        return {"series": rows}, rows
    return record, None


def cmd_integral(args) -> tuple[object, list]:
    alpha, beta = parse_scale(args.alpha), parse_scale(args.beta)
    grid = _parse_grid(args.grid, args.q_anchor or 1) if args.grid else default_classify_grid()
    base = {
        "alpha": scale_literal(alpha),
        "beta": scale_literal(beta),
        "p": args.p,
        "q": args.q,
        "A": args.A,
    }
    if args.mode == "classify":
        if args.k is None:
            raise UsageError("classify needs --k")
        v = classify(alpha, beta, args.p, args.q, args.A, args.k, grid)
        return {**base, "k": args.k, "verdict": v.verdict.value,
                "decay_slope": v.decay_slope, "tail_bound": v.tail_bound}, None
    if args.mode == "lemma":
        if args.k is None:
            raise UsageError("lemma needs --k")
        b = lemma_ratio(alpha, beta, args.p, args.q, args.A, args.k, grid)
        return {**base, "k": args.k, "behavior": b.value}, None
    if args.krange is None:
        raise UsageError("transition needs --krange lo:hi")
    tr = transition(alpha, beta, args.p, args.q, args.A, _parse_range(args.krange), args.tol, grid)
    table = [{"k": k, "verdict": v.verdict.value} for k, v in tr.verdict_table]
    if args.series:
        return {"series": table}, table
    return {**base, "k_lo": tr.k_lo, "k_hi": tr.k_hi, "limited": tr.limited,
            "verdict_table": [[row["k"], row["verdict"]] for row in table]}, None


def cmd_nevanlinna(args) -> tuple[object, list]:
    model = parse_model(args.model)
    a = _parse_point(args.a)
    radii = [float(x) for x in args.r.split(",")] if args.r else [1.0]
    rows = []
    for r in radii:
        b = breakdown(model, r, a)
        rows.append({"r": r, "m": b.proximity, "N": b.counting, "T": b.characteristic})
    return {"model": model_literal(model), "a": args.a, "rows": rows}, rows


def cmd_catalog(args) -> tuple[object, list]:
    pairs = [
        {
            "name": pair.name,
            "alpha": scale_literal(pair.alpha),
            "beta": scale_literal(pair.beta),
            "p": pair.p,
            "q": pair.q,
            "description": pair.description,
        }
        for pair in standard_catalog()
    ]
    grammar = [{"kind": k, "literal": lit, "meaning": m} for k, lit, m in GRAMMAR]
    return {"grammar": grammar, "pairs": pairs}, pairs


def cmd_verify(args, config: dict) -> tuple[object, list]:
    report = run_suite(SuiteConfig.from_mapping(config))
    return report, report["rows"]


# --- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--config", default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--stamp", action="store_true")

    scales = _Parser(add_help=False)
    scales.add_argument("--alpha", required=True)
    scales.add_argument("--beta", required=True)
    scales.add_argument("--p", type=int, default=None)
    scales.add_argument("--q", type=int, default=None)
    scales.add_argument("--grid", default=None, help="t0:h:J")
    scales.add_argument("--q-anchor", dest="q_anchor", type=int, default=None)
    scales.add_argument("--series", action="store_true", help="emit the raw series")

    parser = _Parser(prog="relgrowth", description="Relative growth indicators laboratory")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ind = sub.add_parser("indicators", parents=[common, scales], help="orders, types, weak types")
    ind.add_argument("--rho", type=float, default=None, help="exponent for the types")
    ind.add_argument("--lambda", dest="lam", type=float, default=None, help="exponent for the weak types")

    integ = sub.add_parser("integral", parents=[common, scales], help="integral convergence")
    integ.add_argument("mode", choices=("classify", "transition", "lemma"))
    integ.add_argument("--A", type=float, default=None)
    integ.add_argument("--k", type=float, default=None)
    integ.add_argument("--krange", default=None, help="lo:hi")
    integ.add_argument("--tol", type=float, default=None)

    nev = sub.add_parser("nevanlinna", parents=[common], help="m, N, T of a model")
    nev.add_argument("--model", required=True)
    nev.add_argument("--r", default=None, help="comma-separated radii")
    nev.add_argument("--a", default="inf", help="target value (default inf)")

    sub.add_parser("verify", parents=[common], help="run the verification suite")
    sub.add_parser("catalog", parents=[common], help="list grammar and standard pairs")
    return parser


_DEFAULTS = {"format": "table", "p": 1, "q": 1, "A": 1.0, "tol": 0.05}
_CONVERTERS = {"p": int, "q": int, "A": float, "k": float, "tol": float, "q_anchor": int,
               "rho": float, "lam": float}


def _apply_config(args, config: dict) -> None:
    for key, raw in config.items():
        if hasattr(args, key) and getattr(args, key) is None:
            try:
                setattr(args, key, _CONVERTERS.get(key, str)(raw))
            except ValueError as exc:
                raise ParseError(f"bad config value for {key}: {raw!r}") from exc
    for key, value in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = read_config(args.config) if args.config else {}
        _apply_config(args, config)
        if args.command == "indicators":
            payload, rows = cmd_indicators(args)
        elif args.command == "integral":
            payload, rows = cmd_integral(args)
        elif args.command == "nevanlinna":
            payload, rows = cmd_nevanlinna(args)
        elif args.command == "catalog":
            payload, rows = cmd_catalog(args)
        else:
            payload, rows = cmd_verify(args, config)
        text = render(payload, args.format, rows)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GrowthError, ArithmeticError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.stamp:
        print(f"# generated {datetime.now(timezone.utc).isoformat()}", file=sys.stderr)
    if args.command == "verify" and not gates_pass(payload):
        return EXIT_GATE
    return EXIT_OK
