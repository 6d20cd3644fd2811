"""Minimal immutable expression engine for jet-space formulas.

Node algebra: exact rationals, symbols (jet variables and formal
parameters), n-ary sums and products, powers with arbitrary Expr
exponents, exp and ln.  Subtraction is a product with -1 and division
is a power with exponent -1, so the differentiation rules stay small.

Evaluation is complex-valued with principal branches; an exact
Fraction fast-path kicks in whenever a subtree is branch-free and all
assignments are rational (including exact rational roots such as
(9/4)^(1/2) = 3/2).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, float, complex, Fraction]

BRANCH_CONVENTION = "principal"


class DomainError(ArithmeticError):
    """Evaluation hit ln(0), 0^negative or a non-finite value."""

    def __init__(self, message: str, subterm: "Expr"):
        super().__init__(f"{message} in subterm {subterm!r}")
        self.subterm = subterm


# ---------------------------------------------------------------------------
# nodes
# ---------------------------------------------------------------------------

class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add((self, as_expr(other)))

    def __radd__(self, other):
        return Add((as_expr(other), self))

    def __sub__(self, other):
        return Add((self, Mul((NEG_ONE, as_expr(other)))))

    def __rsub__(self, other):
        return Add((as_expr(other), Mul((NEG_ONE, self))))

    def __mul__(self, other):
        return Mul((self, as_expr(other)))

    def __rmul__(self, other):
        return Mul((as_expr(other), self))

    def __truediv__(self, other):
        return Mul((self, Pow(as_expr(other), NEG_ONE)))

    def __rtruediv__(self, other):
        return Mul((as_expr(other), Pow(self, NEG_ONE)))

    def __pow__(self, other):
        return Pow(self, as_expr(other))

    def __neg__(self):
        return Mul((NEG_ONE, self))

    def __repr__(self):
        from .parser import to_str

        return to_str(self)


@dataclass(frozen=True, repr=False)
class Rat(Expr):
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, repr=False)
class Sym(Expr):
    name: str
    is_param: bool = False


@dataclass(frozen=True, repr=False)
class Add(Expr):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True, repr=False)
class Mul(Expr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True, repr=False)
class Pow(Expr):
    base: Expr
    exponent: Expr


@dataclass(frozen=True, repr=False)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True, repr=False)
class Ln(Expr):
    arg: Expr


def R(p, q=1) -> Rat:
    return Rat(Fraction(p, q))


ZERO = R(0)
ONE = R(1)
NEG_ONE = R(-1)
HALF = R(1, 2)


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return Rat(Fraction(v))
    raise TypeError(f"cannot coerce {v!r} to Expr")


def var(name: str) -> Sym:
    return Sym(name, is_param=False)


def param(name: str) -> Sym:
    return Sym(name, is_param=True)


def free_symbols(e: Expr) -> frozenset:
    if isinstance(e, Sym):
        return frozenset((e,))
    if isinstance(e, Rat):
        return frozenset()
    if isinstance(e, Add):
        out = frozenset()
        for t in e.terms:
            out |= free_symbols(t)
        return out
    if isinstance(e, Mul):
        out = frozenset()
        for f in e.factors:
            out |= free_symbols(f)
        return out
    if isinstance(e, Pow):
        return free_symbols(e.base) | free_symbols(e.exponent)
    return free_symbols(e.arg)


# ---------------------------------------------------------------------------
# canonical ordering (determinism of simplified forms)
# ---------------------------------------------------------------------------

_KIND_RANK = {Rat: 0, Sym: 1, Pow: 2, Exp: 3, Ln: 4, Mul: 5, Add: 6}


def sort_key(e: Expr):
    if isinstance(e, Rat):
        return (0, e.value.numerator, e.value.denominator)
    if isinstance(e, Sym):
        return (1, e.name)
    if isinstance(e, Pow):
        return (2, sort_key(e.base), sort_key(e.exponent))
    if isinstance(e, Exp):
        return (3, sort_key(e.arg))
    if isinstance(e, Ln):
        return (4, sort_key(e.arg))
    if isinstance(e, Mul):
        return (5, tuple(sort_key(f) for f in e.factors))
    return (6, tuple(sort_key(t) for t in e.terms))


# ---------------------------------------------------------------------------
# simplify
# ---------------------------------------------------------------------------

_simp_cache: dict = {}


def simplify(e: Expr) -> Expr:
    """Best-effort canonicalization preserving the value on the domain.

    Flattens sums/products, merges rational constants, adds exponents of
    identical bases, merges exp factors, and folds exact rational powers.
    Not a decision procedure.
    """
    hit = _simp_cache.get(e)
    if hit is not None:
        return hit
    out = _simplify(e)
    _simp_cache[e] = out
    _simp_cache[out] = out
    return out


def _simplify(e: Expr) -> Expr:
    if isinstance(e, (Rat, Sym)):
        return e
    if isinstance(e, Add):
        return _simplify_add([simplify(t) for t in e.terms])
    if isinstance(e, Mul):
        return _simplify_mul([simplify(f) for f in e.factors])
    if isinstance(e, Pow):
        return _simplify_pow(simplify(e.base), simplify(e.exponent))
    if isinstance(e, Exp):
        return _simplify_exp(simplify(e.arg))
    if isinstance(e, Ln):
        return _simplify_ln(simplify(e.arg))
    raise TypeError(f"unknown node {type(e)}")


def _split_coeff(t: Expr):
    # term -> (rational coefficient, key expression or None for pure constant)
    if isinstance(t, Rat):
        return t.value, None
    if isinstance(t, Mul):
        coeff = Fraction(1)
        rest = []
        for f in t.factors:
            if isinstance(f, Rat):
                coeff *= f.value
            else:
                rest.append(f)
        if not rest:
            return coeff, None
        key = rest[0] if len(rest) == 1 else Mul(tuple(rest))
        return coeff, key
    return Fraction(1), t


def _simplify_add(terms) -> Expr:
    const = Fraction(0)
    bucket: dict = {}
    order: list = []
    for t in terms:
        if isinstance(t, Add):
            sub = list(t.terms)
        else:
            sub = [t]
        for s in sub:
            c, key = _split_coeff(s)
            if key is None:
                const += c
            else:
                if key not in bucket:
                    bucket[key] = Fraction(0)
                    order.append(key)
                bucket[key] += c
    out = []
    for key in sorted(order, key=sort_key):
        c = bucket[key]
        if c == 0:
            continue
        if c == 1:
            out.append(key)
        elif isinstance(key, Mul):
            out.append(Mul((Rat(c),) + key.factors))
        else:
            out.append(Mul((Rat(c), key)))
    if const != 0:
        out.insert(0, Rat(const))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Add(tuple(out))


def _simplify_mul(factors) -> Expr:
    coeff = Fraction(1)
    powmap: dict = {}
    order: list = []
    exp_args: list = []

    def feed(base: Expr, expo: Expr):
        if base not in powmap:
            powmap[base] = []
            order.append(base)
        powmap[base].append(expo)

    stack = list(factors)
    while stack:
        f = stack.pop(0)
        if isinstance(f, Mul):
            stack[0:0] = list(f.factors)
        elif isinstance(f, Rat):
            coeff *= f.value
        elif isinstance(f, Pow):
            feed(f.base, f.exponent)
        elif isinstance(f, Exp):
            exp_args.append(f.arg)
        else:
            feed(f, ONE)

    if coeff == 0:
        return ZERO

    out = []
    for base in sorted(order, key=sort_key):
        expo = _simplify_add(powmap[base])
        piece = _simplify_pow(base, expo)
        if isinstance(piece, Rat):
            coeff *= piece.value
            if coeff == 0:
                return ZERO
        elif isinstance(piece, Mul):
            # e.g. distributed power; splice its factors back in
            for g in piece.factors:
                if isinstance(g, Rat):
                    coeff *= g.value
                else:
                    out.append(g)
        else:
            out.append(piece)
    if exp_args:
        arg = _simplify_add(exp_args)
        piece = _simplify_exp(arg)
        if piece != ONE:
            out.append(piece)
    out.sort(key=sort_key)
    if coeff != 1:
        out.insert(0, Rat(coeff))
    if not out:
        return ONE
    if len(out) == 1:
        return out[0]
    return Mul(tuple(out))


def _exact_nth_root(fr: Fraction, n: int):
    if fr < 0:
        return None

    def iroot(v: int):
        if v in (0, 1):
            return v
        r = int(round(v ** (1.0 / n)))
        for c in (r - 1, r, r + 1, r + 2):
            if c >= 0 and c**n == v:
                return c
        return None

    p = iroot(fr.numerator)
    q = iroot(fr.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _simplify_pow(b: Expr, e: Expr) -> Expr:
    if isinstance(e, Rat) and e.value == 0:
        return ONE
    if isinstance(e, Rat) and e.value == 1:
        return b
    if isinstance(b, Rat):
        if b.value == 1:
            return ONE
        if isinstance(e, Rat):
            ev = e.value
            if ev.denominator == 1:
                if b.value == 0 and ev < 0:
                    return Pow(b, e)  # left for eval to report
                return Rat(b.value ** int(ev))
            root = _exact_nth_root(b.value, ev.denominator)
            if root is not None and not (root == 0 and ev < 0):
                return Rat(root ** ev.numerator) if root != 0 else ZERO
        return Pow(b, e)
    if isinstance(e, Rat) and e.value.denominator == 1:
        n = e.value
        if isinstance(b, Pow):
            return _simplify_pow(b.base, _simplify_mul([b.exponent, Rat(n)]))
        if isinstance(b, Exp):
            return _simplify_exp(_simplify_mul([Rat(n), b.arg]))
        if isinstance(b, Mul):
            return _simplify_mul([_simplify_pow(f, Rat(n)) for f in b.factors])
    return Pow(b, e)


def _simplify_exp(arg: Expr) -> Expr:
    if isinstance(arg, Rat) and arg.value == 0:
        return ONE
    if isinstance(arg, Ln):
        return arg.arg
    return Exp(arg)


def _simplify_ln(arg: Expr) -> Expr:
    if isinstance(arg, Rat) and arg.value == 1:
        return ZERO
    if isinstance(arg, Exp):
        # sound on the real sampling domains used throughout this package
        return arg.arg
    return Ln(arg)


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------

def diff(e: Expr, v: Sym) -> Expr:
    """Partial derivative with respect to a variable symbol.

    Parameters are treated as constants.
    """
    if v.is_param:
        raise ValueError(f"cannot differentiate with respect to parameter {v.name}")
    return simplify(_diff(e, v))


def _diff(e: Expr, v: Sym) -> Expr:
    if isinstance(e, Rat):
        return ZERO
    if isinstance(e, Sym):
        return ONE if e == v else ZERO
    if isinstance(e, Add):
        return Add(tuple(_diff(t, v) for t in e.terms))
    if isinstance(e, Mul):
        terms = []
        fs = e.factors
        for i, f in enumerate(fs):
            terms.append(Mul(fs[:i] + (_diff(f, v),) + fs[i + 1:]))
        return Add(tuple(terms))
    if isinstance(e, Pow):
        b, ex = e.base, e.exponent
        db, de = _diff(b, v), _diff(ex, v)
        # b^e * (e' ln b + e b'/b); vanishing pieces drop in simplify
        t1 = Mul((e, de, Ln(b)))
        t2 = Mul((e, ex, db, Pow(b, NEG_ONE)))
        return Add((t1, t2))
    if isinstance(e, Exp):
        return Mul((e, _diff(e.arg, v)))
    if isinstance(e, Ln):
        return Mul((_diff(e.arg, v), Pow(e.arg, NEG_ONE)))
    raise TypeError(f"unknown node {type(e)}")


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------

def subst(e: Expr, bindings: Mapping[Sym, Expr]) -> Expr:
    """Simultaneous substitution of symbols; symbols are global, no capture."""
    if not bindings:
        return e
    return simplify(_subst(e, dict(bindings)))


def _subst(e: Expr, bindings: dict) -> Expr:
    if isinstance(e, Rat):
        return e
    if isinstance(e, Sym):
        return bindings.get(e, e)
    if isinstance(e, Add):
        return Add(tuple(_subst(t, bindings) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(tuple(_subst(f, bindings) for f in e.factors))
    if isinstance(e, Pow):
        return Pow(_subst(e.base, bindings), _subst(e.exponent, bindings))
    if isinstance(e, Exp):
        return Exp(_subst(e.arg, bindings))
    return Ln(_subst(e.arg, bindings))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalContext:
    """Assignment of symbols to numbers plus the branch/precision policy.

    Powers and logarithms use principal branches.  ``prec`` selects an
    mpmath evaluation with that many decimal digits; the default is
    machine complex arithmetic with an exact Fraction fast-path.
    """

    values: Mapping[str, Number]
    prec: int | None = None


def evaluate(e: Expr, ctx: EvalContext):
    """Value of ``e`` under ``ctx``; Fraction when the computation is exact."""
    val, _ = eval_with_scale(e, ctx)
    return val


def eval_with_scale(e: Expr, ctx: EvalContext):
    """Evaluate and also report the largest intermediate magnitude."""
    if ctx.prec is not None:
        return _eval_mp(e, ctx)
    scale = [0.0]
    val = _eval(e, ctx.values, scale)
    return val, scale[0]


def _abs(v) -> float:
    if isinstance(v, Fraction):
        return abs(float(v))
    return abs(v)


def _track(v, scale):
    a = _abs(v)
    if a > scale[0]:
        scale[0] = a
    return v


def _to_c(v) -> complex:
    if isinstance(v, Fraction):
        return complex(float(v))
    return complex(v)


def _eval(e: Expr, values, scale):
    if isinstance(e, Rat):
        return _track(e.value, scale)
    if isinstance(e, Sym):
        try:
            v = values[e.name]
        except KeyError:
            raise DomainError("unassigned symbol", e) from None
        if isinstance(v, int):
            v = Fraction(v)
        return _track(v, scale)
    if isinstance(e, Add):
        parts = [_eval(t, values, scale) for t in e.terms]
        if all(isinstance(p, Fraction) for p in parts):
            return _track(sum(parts, Fraction(0)), scale)
        acc = 0j
        for p in parts:
            acc += _to_c(p)
        return _track(acc, scale)
    if isinstance(e, Mul):
        parts = [_eval(f, values, scale) for f in e.factors]
        if all(isinstance(p, Fraction) for p in parts):
            acc = Fraction(1)
            for p in parts:
                acc *= p
            return _track(acc, scale)
        accc = 1 + 0j
        for p in parts:
            accc *= _to_c(p)
        return _track(accc, scale)
    if isinstance(e, Pow):
        b = _eval(e.base, values, scale)
        ex = _eval(e.exponent, values, scale)
        return _track(_eval_pow(b, ex, e), scale)
    if isinstance(e, Exp):
        a = _eval(e.arg, values, scale)
        if isinstance(a, Fraction) and a == 0:
            return _track(Fraction(1), scale)
        return _track(cmath.exp(_to_c(a)), scale)
    if isinstance(e, Ln):
        a = _eval(e.arg, values, scale)
        if isinstance(a, Fraction):
            if a == 0:
                raise DomainError("ln(0)", e)
            if a == 1:
                return _track(Fraction(0), scale)
            a = _to_c(a)
        if a == 0:
            raise DomainError("ln(0)", e)
        return _track(cmath.log(a), scale)
    raise TypeError(f"unknown node {type(e)}")


def _eval_pow(b, ex, node: Pow):
    if isinstance(b, Fraction) and isinstance(ex, Fraction):
        if ex.denominator == 1:
            n = int(ex)
            if b == 0 and n <= 0:
                raise DomainError("0 raised to a non-positive power", node)
            return b**n
        if b == 0:
            if ex > 0:
                return Fraction(0)
            raise DomainError("0 raised to a non-positive power", node)
        if b > 0:
            root = _exact_nth_root(b, ex.denominator)
            if root is not None:
                return root**ex.numerator
    bc, exc = _to_c(b), _to_c(ex)
    if bc == 0:
        if exc.real > 0 and exc.imag == 0:
            return 0j
        raise DomainError("0 raised to a non-positive power", node)
    if exc.imag == 0 and exc.real == int(exc.real) and abs(exc.real) <= 64:
        return bc ** int(exc.real)
    return cmath.exp(exc * cmath.log(bc))


def _eval_mp(e: Expr, ctx: EvalContext):
    import mpmath as mp

    scale = [0.0]

    def go(t: Expr):
        if isinstance(t, Rat):
            return track(mp.mpf(t.value.numerator) / t.value.denominator)
        if isinstance(t, Sym):
            try:
                v = ctx.values[t.name]
            except KeyError:
                raise DomainError("unassigned symbol", t) from None
            if isinstance(v, Fraction):
                return track(mp.mpf(v.numerator) / v.denominator)
            return track(mp.mpmathify(v))
        if isinstance(t, Add):
            acc = mp.mpf(0)
            for u in t.terms:
                acc = acc + go(u)
            return track(acc)
        if isinstance(t, Mul):
            acc = mp.mpf(1)
            for u in t.factors:
                acc = acc * go(u)
            return track(acc)
        if isinstance(t, Pow):
            b, ex = go(t.base), go(t.exponent)
            if b == 0:
                if mp.re(ex) > 0 and mp.im(ex) == 0:
                    return mp.mpf(0)
                raise DomainError("0 raised to a non-positive power", t)
            return track(mp.power(b, ex))
        if isinstance(t, Exp):
            return track(mp.exp(go(t.arg)))
        if isinstance(t, Ln):
            a = go(t.arg)
            if a == 0:
                raise DomainError("ln(0)", t)
            return track(mp.log(a))
        raise TypeError(f"unknown node {type(t)}")

    def track(v):
        a = abs(complex(v))
        if a > scale[0]:
            scale[0] = a
        return v

    with mp.workdps(ctx.prec):
        val = go(e)
    return val, scale[0]
