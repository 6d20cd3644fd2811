import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monge235.expr import (
    DomainError,
    EvalContext,
    Exp,
    Ln,
    Pow,
    R,
    Rat,
    diff,
    evaluate,
    free_symbols,
    param,
    simplify,
    subst,
    var,
)
from monge235.parser import ParseError, parse, to_str

X, Y, Z2 = var("x"), var("y"), var("z2")
M = param("m")


def test_rational_arithmetic_is_exact():
    e = simplify(R(1, 3) + R(1, 6))
    assert e == R(1, 2)
    assert evaluate(e, EvalContext({})) == Fraction(1, 2)


def test_pow_exact_roots():
    assert simplify(Pow(R(8), R(1, 3))) == R(2)
    assert simplify(Pow(R(4, 9), R(1, 2))) == R(2, 3)


def test_division_by_zero_is_domain_error():
    with pytest.raises(DomainError):
        evaluate(1 / X, EvalContext({"x": 0}))


def test_ln_of_negative_uses_principal_branch():
    v = complex(evaluate(Ln(X), EvalContext({"x": Fraction(-2)})))
    import cmath
    assert abs(v - cmath.log(-2)) < 1e-12


def test_ln_of_zero_is_domain_error():
    with pytest.raises(DomainError):
        evaluate(Ln(X), EvalContext({"x": 0}))


def test_diff_chain_rule():
    e = Exp(X * X)
    d = simplify(diff(e, X) - 2 * X * Exp(X * X))
    assert d == R(0)


def test_diff_power_with_symbolic_exponent():
    e = Pow(Z2, M)
    d = simplify(diff(e, Z2) - M * Pow(Z2, M - 1))
    assert d == R(0)


def test_subst_capture_free():
    e = X * Y + Pow(X, R(2))
    out = simplify(subst(e, {X: Y}))
    assert out == simplify(Y * Y + Pow(Y, R(2)))


def test_free_symbols():
    syms = {s.name for s in free_symbols(X * M + Ln(Z2))}
    assert syms == {"x", "m", "z2"}


def test_parse_round_trip_examples():
    from monge235.zerotest import ZeroTestConfig, is_zero
    cfg = ZeroTestConfig(samples=8)
    for text in ["x + 2*y", "z2^(1/2)", "exp(x)*ln(z2)", "-m/(2*m - 1)",
                 "x^2 - 3/4", "1/z2"]:
        e = parse(text)
        assert is_zero(parse(to_str(e)) - e, cfg)


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse("x + ")
    with pytest.raises(ParseError):
        parse("exp x")


# ---------------------------------------------------------------------------
# property-based checks
# ---------------------------------------------------------------------------

_rat = st.fractions(min_value=-4, max_value=4).map(Rat)
_sym = st.sampled_from([X, Y, Z2])


def _exprs(depth=2):
    base = st.one_of(_rat, _sym)
    if depth == 0:
        return base
    sub = _exprs(depth - 1)
    return st.one_of(
        base,
        st.tuples(sub, sub).map(lambda t: t[0] + t[1]),
        st.tuples(sub, sub).map(lambda t: t[0] * t[1]),
        sub.map(lambda e: Exp(R(1, 4) * e)),
    )


def _ctx(seed):
    rng = random.Random(seed)
    return EvalContext({n: rng.uniform(0.5, 2.0) for n in ("x", "y", "z2")})


@settings(max_examples=40, deadline=None)
@given(_exprs(), _exprs(), st.integers(0, 10))
def test_diff_is_linear(e1, e2, seed):
    d = diff(e1 + e2, X) - diff(e1, X) - diff(e2, X)
    ctx = _ctx(seed)
    assert abs(complex(evaluate(simplify(d), ctx))) < 1e-9


@settings(max_examples=40, deadline=None)
@given(_exprs(), _exprs(), st.integers(0, 10))
def test_diff_product_rule(e1, e2, seed):
    d = diff(e1 * e2, X) - diff(e1, X) * e2 - e1 * diff(e2, X)
    ctx = _ctx(seed)
    assert abs(complex(evaluate(simplify(d), ctx))) < 1e-9


@settings(max_examples=60, deadline=None)
@given(_exprs(), st.integers(0, 10))
def test_simplify_preserves_value(e, seed):
    ctx = _ctx(seed)
    a = complex(evaluate(e, ctx))
    b = complex(evaluate(simplify(e), ctx))
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


@settings(max_examples=30, deadline=None)
@given(_exprs())
def test_simplify_is_deterministic_and_idempotent(e):
    s1 = simplify(e)
    s2 = simplify(e)
    assert s1 == s2
    assert simplify(s1) == s1


@settings(max_examples=30, deadline=None)
@given(_exprs(), st.integers(0, 10))
def test_printer_round_trip(e, seed):
    ctx = _ctx(seed)
    a = complex(evaluate(e, ctx))
    b = complex(evaluate(parse(to_str(e)), ctx))
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))
