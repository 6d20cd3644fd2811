"""Plain-text grammar for expressions.

Operators ``+ - * / ^``, functions ``exp(...)`` and ``ln(...)``,
rational literals ``p/q`` (and decimal literals, read exactly), and
symbols.  Names ``x``, ``y``, ``z`` and ``z1``, ``z2``, ... are jet
variables; every other identifier is a formal parameter.

Round-trip property: ``simplify(parse(to_str(e))) == simplify(e)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import Add, Exp, Expr, Ln, Mul, Pow, Rat, Sym, param, simplify, var

_VAR_RE = re.compile(r"^(x|y|z\d*)$")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


class ParseError(ValueError):
    pass


def symbol(name: str) -> Sym:
    """Jet-variable or parameter symbol, decided by the naming convention."""
    if _VAR_RE.match(name):
        return var(name)
    return param(name)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character at position {pos}: {text[pos:]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    tokens.append(("end", ""))
    return tokens


def parse(text: str) -> Expr:
    """Parse an expression string; the result is simplified."""
    tokens = _tokenize(text)
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take(expected=None):
        kind, val = tokens[idx[0]]
        if expected is not None and (kind, val) != ("op", expected):
            raise ParseError(f"expected {expected!r}, found {val!r}")
        idx[0] += 1
        return kind, val

    def expr_rule():
        node = term_rule()
        while peek() == ("op", "+") or peek() == ("op", "-"):
            _, op = take()
            rhs = term_rule()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term_rule():
        node = unary_rule()
        while peek() == ("op", "*") or peek() == ("op", "/"):
            _, op = take()
            rhs = unary_rule()
            node = node * rhs if op == "*" else node / rhs
        return node

    def unary_rule():
        if peek() == ("op", "-"):
            take()
            return -unary_rule()
        return power_rule()

    def power_rule():
        base = atom_rule()
        if peek() == ("op", "^"):
            take()
            return Pow(base, unary_rule())
        return base

    def atom_rule():
        kind, val = peek()
        if kind == "num":
            take()
            return Rat(Fraction(val))
        if kind == "name":
            take()
            if val in ("exp", "ln") and peek() == ("op", "("):
                take("(")
                inner = expr_rule()
                take(")")
                return Exp(inner) if val == "exp" else Ln(inner)
            return symbol(val)
        if (kind, val) == ("op", "("):
            take("(")
            inner = expr_rule()
            take(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    node = expr_rule()
    if peek()[0] != "end":
        raise ParseError(f"trailing input: {peek()[1]!r}")
    return simplify(node)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def to_str(e: Expr) -> str:
    return _print(e, 0)


def _print(e: Expr, ctx_prec: int) -> str:
    if isinstance(e, Rat):
        v = e.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        prec = _PREC_ATOM if v >= 0 and v.denominator == 1 else _PREC_MUL
        return _wrap(s, prec, ctx_prec)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Add):
        parts = []
        for i, t in enumerate(e.terms):
            s = _print(t, _PREC_ADD)
            if i == 0:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(" - " + s[1:])
            else:
                parts.append(" + " + s)
        return _wrap("".join(parts), _PREC_ADD, ctx_prec)
    if isinstance(e, Mul):
        parts = [_print(f, _PREC_MUL + 1) for f in e.factors]
        # leading -1 coefficient prints as a sign
        if parts and parts[0] == "(-1)" and len(parts) > 1:
            return _wrap("-" + "*".join(parts[1:]), _PREC_MUL, ctx_prec)
        return _wrap("*".join(parts), _PREC_MUL, ctx_prec)
    if isinstance(e, Pow):
        b = _print(e.base, _PREC_POW + 1)
        x = _print(e.exponent, _PREC_POW + 1)
        return _wrap(f"{b}^{x}", _PREC_POW, ctx_prec)
    if isinstance(e, Exp):
        return f"exp({_print(e.arg, 0)})"
    if isinstance(e, Ln):
        return f"ln({_print(e.arg, 0)})"
    raise TypeError(f"unknown node {type(e)}")


def _wrap(s: str, prec: int, ctx_prec: int) -> str:
    if prec < ctx_prec:
        return f"({s})"
    return s
