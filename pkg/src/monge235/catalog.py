"""Catalog of submaximal Monge models and their symmetry bases.

Each model records its right-hand side, chart, parameter constraints
and the listed 7-field symmetry basis.  Singular parameter strata
(linear models, coincident or vanishing exponents, the exceptional
14-dimensional locus) are hard errors: the 7-field lists are not valid
bases there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .expr import (
    HALF,
    ONE,
    ZERO,
    Exp,
    Expr,
    Ln,
    Pow,
    R,
    Rat,
    Sym,
    as_expr,
    param,
    simplify,
    subst,
)
from .jet import X, Y, Z, Distribution, VectorField, jet_chart, monge_distribution, zvar
from . import parser

ParamValue = Union[Fraction, int, Sym]


class SingularParameterError(ValueError):
    def __init__(self, stratum: str):
        super().__init__(f"singular parameter: {stratum}")
        self.stratum = stratum


@dataclass(frozen=True)
class MongeModel:
    name: str
    order: int
    rhs: Expr
    chart: tuple
    params: Mapping[str, object] = field(default_factory=dict)
    symmetries: Mapping[str, VectorField] = field(default_factory=dict)
    label: str = ""

    def distribution(self) -> Distribution:
        return monge_distribution(self.rhs, self.order)

    def symmetry_fields(self) -> list:
        return list(self.symmetries.values())


def _as_param(v: ParamValue) -> Expr:
    if isinstance(v, Sym):
        return v
    return Rat(Fraction(v))


Z1, Z2 = zvar(1), zvar(2)
CHART5 = jet_chart(2)


def _vf(*comps) -> VectorField:
    return VectorField(CHART5, tuple(as_expr(c) for c in comps))


# ---------------------------------------------------------------------------
# power family  y' = (z'')^m
# ---------------------------------------------------------------------------

def model_Pm(m: ParamValue) -> MongeModel:
    """Power model with its 7 symmetry generators W1..W7.

    m = 0, 1 are the linear equations (infinite-dimensional symmetry)
    and are rejected; m = 1/2 is allowed and uses the logarithmic
    antiderivative in W7.  The integration constant of W7 is fixed to 0
    so structure constants are reproducible.
    """
    me = _as_param(m)
    numeric = isinstance(me, Rat)
    if numeric and me.value in (0, 1):
        raise SingularParameterError(f"m={me.value}: linear model")
    mm = me

    w1 = _vf(1, 0, 0, 0, 0)
    w2 = _vf(0, 1, 0, 0, 0)
    w3 = _vf(0, 0, 1, 0, 0)
    w4 = _vf(X, Y, 2 * Z, Z1, 0)
    w5 = _vf(0, 0, X, 1, 0)
    w6 = _vf(0, mm * Y, Z, Z1, Z2)
    if numeric and me.value == Fraction(1, 2):
        anti = Ln(Z2)
    else:
        anti = Pow(Z2, 2 * mm - 1) / (2 * mm - 1)
    w7 = _vf(
        Pow(Z2, mm - 1),
        (mm - 1) * anti,
        Z1 * Pow(Z2, mm - 1) - Y / mm,
        (1 - 1 / mm) * Pow(Z2, mm),
        0,
    )
    syms = {"W1": w1, "W2": w2, "W3": w3, "W4": w4, "W5": w5, "W6": w6, "W7": w7}
    return MongeModel(
        name=f"Pm(m={me!r})" if not numeric else f"Pm(m={me.value})",
        order=2,
        rhs=simplify(Pow(Z2, mm)),
        chart=CHART5,
        params={"m": me.value if numeric else me},
        symmetries=syms,
        label="Pm",
    )


def w6prime(model: MongeModel) -> VectorField:
    """Derived extension generator W6' = W6 - W4/2."""
    return model.symmetries["W6"] - model.symmetries["W4"] * HALF


# ---------------------------------------------------------------------------
# quadratic family  y' = (z'')^2 + r1 (z')^2 + r2 z^2
# ---------------------------------------------------------------------------

def model_Q(r1: ParamValue, r2: ParamValue) -> MongeModel:
    """General quadratic model; carries no symmetry list."""
    r1e, r2e = _as_param(r1), _as_param(r2)
    rhs = Pow(Z2, R(2)) + r1e * Pow(Z1, R(2)) + r2e * Pow(Z, R(2))
    return MongeModel(
        name=f"Q(r1={r1}, r2={r2})",
        order=2,
        rhs=simplify(rhs),
        chart=CHART5,
        params={"r1": r1, "r2": r2},
        label="Q",
    )


def xi_field(a: Expr, b: Expr) -> VectorField:
    """Exponential symmetry generator of the quadratic family."""
    a, b = as_expr(a), as_expr(b)
    e = Exp(b * X)
    return _vf(0, e * 2 * b * (a * a * Z + b * Z1), e, e * b, e * b * b)


def model_Qab(a: ParamValue, b: ParamValue) -> MongeModel:
    """Quadratic model in exponent parameters, r1 = a^2+b^2, r2 = a^2 b^2."""
    if isinstance(a, Sym) or isinstance(b, Sym):
        raise ValueError("model_Qab needs numeric parameters")
    af, bf = Fraction(a), Fraction(b)
    if af * bf == 0:
        raise SingularParameterError("a*b=0 (1st singular case; see model_N12)")
    if af == bf or af == -bf:
        raise SingularParameterError("a=+-b (2nd singular case; see model_NS)")
    if af == 3 * bf or af == -3 * bf or bf == 3 * af or bf == -3 * af:
        raise SingularParameterError(
            "a:b=+-3^(+-1): exceptional 14-dimensional stratum"
        )
    ae, be = Rat(af), Rat(bf)
    syms = {
        "U1": xi_field(-ae, -be),
        "U2": xi_field(-be, -ae),
        "U3": _vf(0, 1, 0, 0, 0),
        "U4": _vf(0, 2 * Y, Z, Z1, Z2),
        "U5": xi_field(ae, be),
        "U6": _vf(1, 0, 0, 0, 0),
        "U7": xi_field(be, ae),
    }
    rhs = Pow(Z2, R(2)) + (ae * ae + be * be) * Pow(Z1, R(2)) + ae * ae * be * be * Pow(Z, R(2))
    return MongeModel(
        name=f"Qab(a={af}, b={bf})",
        order=2,
        rhs=simplify(rhs),
        chart=CHART5,
        params={"a": af, "b": bf},
        symmetries=syms,
        label="Qab",
    )


def model_Qnm(m: ParamValue) -> MongeModel:
    """Quadratic model matching the power model: (a, b) = (1/2, m - 1/2)."""
    me = _as_param(m)
    r1 = simplify(me * me - me + HALF)
    r2 = simplify(R(1, 4) * Pow(me - HALF, R(2)))
    rhs = Pow(Z2, R(2)) + r1 * Pow(Z1, R(2)) + r2 * Pow(Z, R(2))
    syms: dict = {}
    if isinstance(me, Rat):
        try:
            syms = dict(model_Qab(Fraction(1, 2), me.value - Fraction(1, 2)).symmetries)
        except SingularParameterError:
            syms = {}
    return MongeModel(
        name=f"Qnm(m={m})",
        order=2,
        rhs=simplify(rhs),
        chart=CHART5,
        params={"m": m},
        symmetries=syms,
        label="Qnm",
    )


# ---------------------------------------------------------------------------
# special 5D models
# ---------------------------------------------------------------------------

def model_N12() -> MongeModel:
    """y' = (z'')^2 + (z')^2: the (a,b)=(1,0) degeneration.

    The exponential generators collapse pairwise (xi(+-1, 0) = d/dz), so
    the surviving six are completed by the extra field
    U7t = d/dz1 + x d/dz + 2z d/dy.
    """
    one, zero = Rat(Fraction(1)), Rat(Fraction(0))
    syms = {
        "U1": xi_field(-one, zero),        # = d/dz
        "U2": xi_field(zero, -one),
        "U3": _vf(0, 1, 0, 0, 0),
        "U4": _vf(0, 2 * Y, Z, Z1, Z2),
        "U6": _vf(1, 0, 0, 0, 0),
        "U7": xi_field(zero, one),
        "U7t": _vf(0, 2 * Z, X, 1, 0),
    }
    rhs = Pow(Z2, R(2)) + Pow(Z1, R(2))
    return MongeModel(
        name="N12", order=2, rhs=simplify(rhs), chart=CHART5, symmetries=syms,
        label="N12",
    )


def model_ln() -> MongeModel:
    """y' = ln(z'') with generators V1..V7."""
    v1 = _vf(
        -1 / Z2,
        -(Ln(Z2) + 1) / Z2,
        Y - Z1 / Z2,
        Ln(Z2) - 1,
        0,
    )
    syms = {
        "V1": v1,
        "V2": _vf(0, 0, -2 * X, -2, 0),
        "V3": _vf(0, 0, -2, 0, 0),
        "V4": _vf(X, Y, 2 * Z, Z1, 0),
        "V5": _vf(0, 2, 0, 0, 0),
        "V6": _vf(X, Y - 2 * X, 0, -1 * Z1, -2 * Z2),
        "V7": _vf(1, 0, 0, 0, 0),
    }
    return MongeModel(
        name="ln", order=2, rhs=Ln(Z2), chart=CHART5, symmetries=syms, label="ln",
    )


def model_NS() -> MongeModel:
    """y' = (z'')^2 + 2(z')^2 + z^2: the a = b degeneration."""
    ex, emx = Exp(X), Exp(-1 * X)
    syms = {
        "U1": _vf(
            0,
            ex * 2 * ((X + 1) * Z1 + (X - 2) * Z),
            ex * (X - 1),
            ex * X,
            ex * (X + 1),
        ),
        "U2": _vf(0, ex * 2 * (Z1 + Z), ex, ex, ex),
        "U3": _vf(0, 8, 0, 0, 0),
        "U4": _vf(0, 2 * Y, Z, Z1, Z2),
        "U5": _vf(0, emx * 2 * (Z1 - Z), emx, -1 * emx, emx),
        "U6": _vf(1, 0, 0, 0, 0),
        "U7": _vf(
            0,
            emx * 2 * ((X - 2) * Z1 - (X + 1) * Z),
            emx * X,
            -1 * emx * (X - 1),
            emx * (X - 2),
        ),
    }
    rhs = Pow(Z2, R(2)) + 2 * Pow(Z1, R(2)) + Pow(Z, R(2))
    return MongeModel(
        name="NS", order=2, rhs=simplify(rhs), chart=CHART5, symmetries=syms,
        label="NS",
    )


def model_exp() -> MongeModel:
    """y' = exp(z'') with generators numbered to match the m = 1/2 power model."""
    ez2 = Exp(Z2)
    syms = {
        "V1": _vf(0, HALF, 0, 0, 0),
        "V2": _vf(0, 0, -1 * X, -1, 0),
        "V3": _vf(0, 0, R(-1, 2), 0, 0),
        "V4": _vf(X, Y, 2 * Z, Z1, 0),
        "V5": _vf(
            ez2,
            HALF * Exp(2 * Z2),
            -1 * (Y - Z1 * ez2),
            (Z2 - 1) * ez2,
            0,
        ),
        "V6": _vf(0, R(-1, 2) * Y, R(-1, 4) * Pow(X, R(2)), R(-1, 2) * X, R(-1, 2)),
        "V7": _vf(1, 0, 0, 0, 0),
    }
    return MongeModel(
        name="exp", order=2, rhs=Exp(Z2), chart=CHART5, symmetries=syms, label="exp",
    )


# ---------------------------------------------------------------------------
# higher order
# ---------------------------------------------------------------------------

def model_higher(n: int, coeffs) -> MongeModel:
    """y' = (z^(n))^2 + r1 (z^(n-1))^2 + ... + rn z^2; no symmetry list."""
    if n < 2:
        raise ValueError("order must be >= 2")
    coeffs = tuple(coeffs)
    if len(coeffs) != n:
        raise ValueError(f"expected {n} coefficients")
    chart = jet_chart(n)
    rhs = Pow(zvar(n), R(2))
    for i, r in enumerate(coeffs):
        k = n - 1 - i
        base = zvar(k) if k >= 1 else Z
        rhs = rhs + _as_param(r) * Pow(base, R(2))
    return MongeModel(
        name=f"higher(n={n})", order=n, rhs=simplify(rhs), chart=chart,
        params={f"r{i + 1}": c for i, c in enumerate(coeffs)}, label="higher",
    )


# ---------------------------------------------------------------------------
# exact rational sample points (for exact structure-constant extraction)
# ---------------------------------------------------------------------------

def exact_sample_points(model: MongeModel, count: int = 3) -> list:
    """Rational chart points where the listed fields evaluate exactly.

    Transcendental generators are pinned: z2 = 1 kills z2^c and ln z2,
    x = 0 kills e^(b x), z2 = 0 kills e^(c z2) for the exp model.
    """
    base = [
        (Fraction(1, 2), Fraction(2), Fraction(-1), Fraction(1, 3)),
        (Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(-1, 2)),
        (Fraction(3), Fraction(-1, 3), Fraction(1, 2), Fraction(2)),
        (Fraction(-2), Fraction(3), Fraction(1, 5), Fraction(-3)),
    ]
    pts = []
    for row in base[:count]:
        xv, yv, zv, z1v = row
        if model.label in ("Qab", "Qnm", "N12", "NS"):
            pts.append({"x": Fraction(0), "y": yv, "z": zv, "z1": z1v, "z2": xv + 2})
        elif model.label == "exp":
            pts.append({"x": xv, "y": yv, "z": zv, "z1": z1v, "z2": Fraction(0)})
        else:  # Pm, ln: pin z2 = 1
            pts.append({"x": xv, "y": yv, "z": zv, "z1": z1v, "z2": Fraction(1)})
    return pts


# ---------------------------------------------------------------------------
# user-supplied models (JSON)
# ---------------------------------------------------------------------------

def load_model_json(path: str) -> MongeModel:
    """Model definition file: {name, n, rhs, params, symmetries}."""
    with open(path) as fh:
        data = json.load(fh)
    n = int(data["n"])
    chart = jet_chart(n)
    rhs = parser.parse(data["rhs"])
    syms = {}
    for key, comps in data.get("symmetries", {}).items():
        if len(comps) != len(chart):
            raise ValueError(f"symmetry {key}: expected {len(chart)} components")
        syms[key] = VectorField(chart, tuple(parser.parse(c) for c in comps))
    params = {k: Fraction(v) for k, v in data.get("params", {}).items()}
    return MongeModel(
        name=data["name"], order=n, rhs=rhs, chart=chart, params=params,
        symmetries=syms, label="user",
    )
