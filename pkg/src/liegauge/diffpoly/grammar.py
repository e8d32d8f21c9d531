"""Canonical text grammar and structured serialization for polynomials.

Text form: indeterminates ``ap_i, am_i, a0_i, b_i, r_i, t_i, y_i, aux_i``,
derivative suffix ``^(k)`` (primes accepted on input), integer powers ``^k``,
rational coefficients ``p/q``.  Example: ``b_3^(1) - ap_3*b_3^2``.

Printing is deterministic (terms in a fixed structural order), and
``parse_poly(poly_to_text(p)) == p`` for every polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import CLASSES, DiffPoly, Monomial
from .frac import DiffFrac

# ---------------------------------------------------------------- printing


def _mono_sort_key(mono: Monomial):
    return (sum(e for _, e in mono), mono)


def _name(key) -> str:
    cls, idx, order = key
    s = f"{cls}_{idx}"
    if order:
        s += f"^({order})"
    return s


def _term_text(mono: Monomial, coeff) -> str:
    coeff = Fraction(coeff)
    parts = []
    if not mono:
        return str(coeff)
    if abs(coeff) != 1:
        parts.append(str(abs(coeff)))
    for key, e in mono:
        v = _name(key)
        if e > 1:
            v += f"^{e}"
        parts.append(v)
    return "*".join(parts)


def poly_to_text(p: DiffPoly) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: _mono_sort_key(kv[0]), reverse=True)
    out = []
    for i, (mono, c) in enumerate(items):
        neg = Fraction(c) < 0
        txt = _term_text(mono, c)
        if i == 0:
            out.append(("-" if neg else "") + txt)
        else:
            out.append((" - " if neg else " + ") + txt)
    return "".join(out)


def frac_to_text(f: DiffFrac) -> str:
    if f.is_polynomial():
        return poly_to_text(f.num)
    return f"({poly_to_text(f.num)}) / ({poly_to_text(f.den)})"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<name>(?:ap|am|a0|aux|b|r|t|y)_\d+)|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<op>[-+*^()'])|(?P<end>$))"
)


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            raise ParseError(f"unexpected input at {text[pos:pos + 10]!r}")
        if m.group("name"):
            tokens.append(("name", m.group("name")))
        elif m.group("number"):
            tokens.append(("number", m.group("number")))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
        else:
            break
        pos = m.end()
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse_expr(self) -> DiffPoly:
        sign = 1
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.next()
            sign = -1
        elif (kind, val) == ("op", "+"):
            self.next()
        acc = self.parse_term() * sign
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "+"):
                self.next()
                acc = acc + self.parse_term()
            elif (kind, val) == ("op", "-"):
                self.next()
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self) -> DiffPoly:
        acc = self.parse_factor()
        while self.peek() == ("op", "*"):
            self.next()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> DiffPoly:
        acc = self.parse_atom()
        while True:
            if self.peek() == ("op", "'"):
                self.next()
                acc = acc.derivative()
                continue
            if self.peek() == ("op", "^"):
                self.next()
                if self.peek() == ("op", "("):
                    self.next()
                    kind, val = self.next()
                    if kind != "number" or "/" in val:
                        raise ParseError("derivative order must be an integer")
                    self.expect_op(")")
                    acc = acc.derivative(int(val))
                else:
                    kind, val = self.next()
                    if kind != "number" or "/" in val:
                        raise ParseError("exponent must be an integer")
                    acc = acc ** int(val)
                continue
            return acc

    def parse_atom(self) -> DiffPoly:
        kind, val = self.next()
        if kind == "number":
            if "/" in val:
                a, b = val.split("/")
                return DiffPoly.const(Fraction(int(a), int(b)))
            return DiffPoly.const(int(val))
        if kind == "name":
            cls, idx = val.rsplit("_", 1)
            return DiffPoly.indet(cls, int(idx))
        if (kind, val) == ("op", "("):
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.parse_atom()
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> DiffPoly:
    p = _Parser(_tokenize(text))
    result = p.parse_expr()
    if p.peek()[0] != "end":
        raise ParseError(f"trailing input near {p.peek()[1]!r}")
    return result


def parse_frac(text: str) -> DiffFrac:
    if ") / (" in text:
        left, right = text.split(") / (", 1)
        return DiffFrac(parse_poly(left.lstrip("(")), parse_poly(right.rstrip(")")))
    return DiffFrac(parse_poly(text))


# ------------------------------------------------------- structured form

def poly_to_tree(p: DiffPoly) -> dict:
    terms = []
    for mono, c in sorted(p.terms.items(), key=lambda kv: _mono_sort_key(kv[0]), reverse=True):
        factors = [
            {
                "type": "power",
                "base": {"type": "derivative", "class": k[0], "index": k[1], "order": k[2]},
                "exp": e,
            }
            for k, e in mono
        ]
        terms.append({"type": "term", "coeff": str(Fraction(c)), "factors": factors})
    return {"type": "sum", "terms": terms}


def tree_to_poly(tree: dict) -> DiffPoly:
    if tree.get("type") != "sum":
        raise ValueError("expected a sum node")
    acc = DiffPoly.zero()
    for term in tree["terms"]:
        t = DiffPoly.const(Fraction(term["coeff"]))
        for f in term["factors"]:
            base = f["base"]
            t = t * DiffPoly.deriv(base["class"], base["index"], base["order"]) ** f["exp"]
        acc = acc + t
    return acc


def frac_to_tree(f: DiffFrac) -> dict:
    return {"type": "fraction", "num": poly_to_tree(f.num), "den": poly_to_tree(f.den)}


def tree_to_frac(tree: dict) -> DiffFrac:
    if tree.get("type") == "fraction":
        return DiffFrac(tree_to_poly(tree["num"]), tree_to_poly(tree["den"]))
    return DiffFrac(tree_to_poly(tree))
