"""Text literals for models and scales, and their inverse formatting.

Models::

    poly(1,0,1)                      1 + z^2 (ascending coefficients)
    exppow(c=1,n=2)                  exp(z^2)
    exptower(k=2)                    exp(exp(z))
    rat(zeros=[];poles=[1,3];scale=1)
    sum(<model>,<model>)   prod(<model>,<model>)

Scales::

    iter(m=1,n=0,a=2,c=3)   exp   sinlog   maxmod(<model>)   charac(<model>)
    tab(xs=[1,2,3];ys=[1,4,9])

Arguments may be separated by ``,`` or ``;``; complex numbers use Python
syntax (``1+2j``).
"""

from __future__ import annotations

import re

from .errors import ParseError
from .models import ExpPower, ExpTower, FactoredRational, Polynomial, Product, Sum
from .scales import (
    DerivedCharacteristic,
    DerivedMaxMod,
    IteratedScale,
    SinLogScale,
    TabulatedMonotone,
)

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"\s*(?:(?P<num>[+-]?{_NUM}(?:[+-]{_NUM}j|j)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[()\[\]=,;]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        kind, tok = self.peek()
        if kind is None or (value is not None and tok != value):
            raise ParseError(f"expected {value or 'token'} in {self.text!r}")
        self.i += 1
        return kind, tok

    def done(self):
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")

    def value(self):
        kind, tok = self.peek()
        if kind == "num":
            self.take()
            return _number(tok)
        if tok == "[":
            return self.list_()
        if kind == "name":
            return self.call()
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")

    def list_(self):
        self.take("[")
        items = []
        while self.peek()[1] != "]":
            kind, tok = self.take()
            if kind != "num":
                raise ParseError(f"list items must be numbers in {self.text!r}")
            items.append(_number(tok))
            if self.peek()[1] in (",", ";"):
                self.take()
        self.take("]")
        return items

    def call(self):
        _, name = self.take()
        args, kwargs = [], {}
        if self.peek()[1] == "(":
            self.take("(")
            while self.peek()[1] != ")":
                kind, tok = self.peek()
                nxt = self.tokens[self.i + 1][1] if self.i + 1 < len(self.tokens) else None
                if kind == "name" and nxt == "=":
                    self.take()
                    self.take("=")
                    kwargs[tok] = self.value()
                else:
                    args.append(self.value())
                if self.peek()[1] in (",", ";"):
                    self.take()
                elif self.peek()[1] != ")":
                    raise ParseError(f"expected ',' or ')' in {self.text!r}")
            self.take(")")
        return (name.lower(), args, kwargs)


def _number(tok: str):
    if tok.endswith("j"):
        z = complex(tok)
        return z.real if z.imag == 0 else z
    return float(tok)


def _real(v, what):
    if isinstance(v, complex) or not isinstance(v, (int, float)):
        raise ParseError(f"{what} must be a real number")
    return float(v)


def _int(v, what):
    v = _real(v, what)
    if v != int(v):
        raise ParseError(f"{what} must be an integer")
    return int(v)


def _build_model(node):
    if not isinstance(node, tuple):
        raise ParseError("expected a model literal")
    name, args, kw = node
    try:
        if name == "poly":
            coeffs = args or kw.get("coeffs", [])
            if not coeffs:
                raise ParseError("poly needs coefficients")
            return Polynomial(tuple(coeffs))
        if name == "exppow":
            c = kw.get("c", args[0] if args else None)
            n = kw.get("n", args[1] if len(args) > 1 else None)
            return ExpPower(_real(c, "c"), _int(n, "n"))
        if name == "exptower":
            k = kw.get("k", args[0] if args else None)
            return ExpTower(_int(k, "k"))
        if name == "rat":
            return FactoredRational(
                tuple(kw.get("zeros", [])), tuple(kw.get("poles", [])), kw.get("scale", 1.0)
            )
        if name in ("sum", "prod"):
            if len(args) != 2 or kw:
                raise ParseError(f"{name} takes exactly two models")
            cls = Sum if name == "sum" else Product
            return cls(_build_model(args[0]), _build_model(args[1]))
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad {name} literal: {exc}") from exc
    raise ParseError(f"unknown model {name!r}")


def _build_scale(node):
    name, args, kw = node
    try:
        if name == "exp" and not args and not kw:
            return IteratedScale(1, 0, 1.0, 1.0)
        if name == "iter":
            keys = ("m", "n", "a", "c")
            vals = dict(zip(keys, args))
            vals.update(kw)
            if set(vals) - set(keys):
                raise ParseError(f"unknown iter arguments {sorted(set(vals) - set(keys))}")
            return IteratedScale(
                _int(vals.get("m", 1), "m"),
                _int(vals.get("n", 0), "n"),
                _real(vals.get("a", 1.0), "a"),
                _real(vals.get("c", 1.0), "c"),
            )
        if name == "sinlog" and not args and not kw:
            return SinLogScale()
        if name in ("maxmod", "charac"):
            if len(args) != 1 or kw:
                raise ParseError(f"{name} takes one model")
            model = _build_model(args[0])
            return DerivedMaxMod(model) if name == "maxmod" else DerivedCharacteristic(model)
        if name == "tab":
            return TabulatedMonotone(tuple(kw.get("xs", [])), tuple(kw.get("ys", [])))
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad {name} literal: {exc}") from exc
    raise ParseError(f"unknown scale {name!r}")


def parse_model(text: str):
    p = _Parser(text)
    node = p.call()
    p.done()
    return _build_model(node)


def parse_scale(text: str):
    p = _Parser(text)
    node = p.call()
    p.done()
    return _build_scale(node)


def _fmt_num(x) -> str:
    if isinstance(x, complex):
        if x.imag == 0:
            x = x.real
        else:
            return repr(x).strip("()")
    x = float(x)
    return str(int(x)) if x == int(x) and abs(x) < 1e15 else repr(x)


def model_literal(model) -> str:
    if isinstance(model, Polynomial):
        return "poly(" + ",".join(_fmt_num(c) for c in model.coefficients) + ")"
    if isinstance(model, ExpPower):
        return f"exppow(c={_fmt_num(model.c)},n={model.n})"
    if isinstance(model, ExpTower):
        return f"exptower(k={model.k})"
    if isinstance(model, FactoredRational):
        zs = ",".join(_fmt_num(z) for z in model.zeros)
        ps = ",".join(_fmt_num(p) for p in model.poles)
        return f"rat(zeros=[{zs}];poles=[{ps}];scale={_fmt_num(model.scale)})"
    if isinstance(model, Sum):
        return f"sum({model_literal(model.left)},{model_literal(model.right)})"
    if isinstance(model, Product):
        return f"prod({model_literal(model.left)},{model_literal(model.right)})"
    raise ParseError(f"cannot format {model!r}")


def scale_literal(scale) -> str:
    if isinstance(scale, IteratedScale):
        return f"iter(m={scale.m},n={scale.n},a={_fmt_num(scale.a)},c={_fmt_num(scale.c)})"
    if isinstance(scale, SinLogScale):
        return "sinlog"
    if isinstance(scale, DerivedMaxMod):
        return f"maxmod({model_literal(scale.model)})"
    if isinstance(scale, DerivedCharacteristic):
        return f"charac({model_literal(scale.model)})"
    if isinstance(scale, TabulatedMonotone):
        xs = ",".join(_fmt_num(v) for v in scale.xs)
        ys = ",".join(_fmt_num(v) for v in scale.ys)
        return f"tab(xs=[{xs}];ys=[{ys}])"
    raise ParseError(f"cannot format {scale!r}")
