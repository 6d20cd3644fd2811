"""Jet charts, vector fields, Lie brackets, Monge distributions.

A Monge equation y' = f(x, y, z, z1, ..., zn) lives on the chart
(x, y, z, z1, ..., zn); its rank-2 distribution is spanned by
X1 = d/dx + f d/dy + sum z_{i+1} d/dz_i and X2 = d/dz_n.  Growth
vectors use the weak derived flag with numerically evaluated ranks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .expr import (
    ONE,
    ZERO,
    DomainError,
    EvalContext,
    Expr,
    Sym,
    as_expr,
    diff,
    evaluate,
    free_symbols,
    simplify,
    var,
)
from .zerotest import DomainTooSmallError, ZeroTestConfig


class ChartMismatchError(ValueError):
    pass


class RankInstabilityError(ArithmeticError):
    """Numerical rank disagrees across two tolerance decades."""


X, Y, Z = var("x"), var("y"), var("z")


def zvar(i: int) -> Sym:
    return var(f"z{i}")


def jet_chart(n: int) -> tuple:
    """Chart (x, y, z, z1, ..., zn) for a Monge equation of order n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    return (X, Y, Z) + tuple(zvar(i) for i in range(1, n + 1))


def spare_symbol(n: int) -> Sym:
    """The formal z_{n+1} used by total derivatives and prolongation."""
    return zvar(n + 1)


@dataclass(frozen=True)
class VectorField:
    chart: tuple
    components: tuple

    def __post_init__(self):
        comps = tuple(simplify(as_expr(c)) for c in self.components)
        if len(comps) != len(self.chart):
            raise ValueError("component count does not match chart dimension")
        object.__setattr__(self, "components", comps)

    def apply(self, g: Expr) -> Expr:
        """Directional derivative of a function along the field."""
        terms = [c * diff(g, v) for c, v in zip(self.components, self.chart)]
        out = ZERO
        for t in terms:
            out = out + t
        return simplify(out)

    def eval_at(self, values: Mapping[str, object]) -> np.ndarray:
        ctx = EvalContext(values)
        return np.array(
            [complex(evaluate(c, ctx)) for c in self.components], dtype=complex
        )

    def __mul__(self, c):
        return VectorField(self.chart, tuple(as_expr(c) * comp for comp in self.components))

    __rmul__ = __mul__

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.chart != other.chart:
            raise ChartMismatchError("cannot add fields on different charts")
        return VectorField(
            self.chart, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-1) * other


def coordinate_field(chart: tuple, v: Sym) -> VectorField:
    comps = tuple(ONE if u == v else ZERO for u in chart)
    if ONE not in comps:
        raise ValueError(f"{v.name} is not a chart variable")
    return VectorField(chart, comps)


def lie_bracket(V: VectorField, W: VectorField) -> VectorField:
    """[V, W], component-wise V(W_i) - W(V_i)."""
    if V.chart != W.chart:
        raise ChartMismatchError("bracket of fields on different charts")
    comps = tuple(
        simplify(V.apply(wc) - W.apply(vc))
        for vc, wc in zip(V.components, W.components)
    )
    return VectorField(V.chart, comps)


@dataclass(frozen=True)
class Distribution:
    chart: tuple
    fields: tuple
    # the Monge right-hand side generating the annihilator forms, if any
    monge_rhs: Expr | None = None
    order: int | None = None


def monge_distribution(f: Expr, n: int) -> Distribution:
    """Rank-2 distribution of the Monge equation y' = f on the order-n chart."""
    if n < 2:
        raise ValueError("Monge order must be >= 2")
    f = simplify(as_expr(f))
    chart = jet_chart(n)
    comps = {X: ONE, Y: f, Z: zvar(1)}
    for i in range(1, n):
        comps[zvar(i)] = zvar(i + 1)
    comps[zvar(n)] = ZERO
    x1 = VectorField(chart, tuple(comps[v] for v in chart))
    x2 = coordinate_field(chart, zvar(n))
    return Distribution(chart, (x1, x2), monge_rhs=f, order=n)


def annihilator_forms(D: Distribution) -> list:
    """Pfaffian forms (a, g, b) meaning dw_a - g dw_b, derived from the RHS."""
    if D.monge_rhs is None or D.order is None:
        raise ValueError("distribution does not carry a Monge right-hand side")
    n = D.order
    chart = D.chart
    ix = {v: i for i, v in enumerate(chart)}
    forms = [(ix[Y], D.monge_rhs, ix[X]), (ix[Z], zvar(1), ix[X])]
    for i in range(1, n):
        forms.append((ix[zvar(i)], zvar(i + 1), ix[X]))
    return forms


def total_derivative(f: Expr, n: int) -> Callable[[Expr], Expr]:
    """Total derivative operator D = d/dx + f d/dy + sum z_{i+1} d/dz_i."""
    f = simplify(as_expr(f))

    def D(g: Expr) -> Expr:
        out = diff(g, X) + f * diff(g, Y) + zvar(1) * diff(g, Z)
        for i in range(1, n + 1):
            out = out + zvar(i + 1) * diff(g, zvar(i))
        return simplify(out)

    return D


# ---------------------------------------------------------------------------
# numerical rank machinery
# ---------------------------------------------------------------------------

def _numeric_rank(mat: np.ndarray, rel_tol: float) -> int:
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def _stable_rank(mat: np.ndarray, rel_tol: float) -> int:
    r1 = _numeric_rank(mat, rel_tol)
    r2 = _numeric_rank(mat, rel_tol * 10.0)
    if r1 != r2:
        raise RankInstabilityError(
            f"rank {r1} at tol {rel_tol:g} but {r2} at {rel_tol * 10:g}"
        )
    return r1


def _point_values(chart: tuple, p: Sequence[float]) -> dict:
    if len(p) != len(chart):
        raise ValueError("point dimension does not match chart")
    return {v.name: q for v, q in zip(chart, p)}


def growth_vector(D: Distribution, p: Sequence[float], tol: float = 1e-8) -> list:
    """Dimensions of the weak derived flag at p, stopping once stable."""
    values = _point_values(D.chart, p)
    dim = len(D.chart)
    flag = list(D.fields)

    def dims_of(fields) -> int:
        mat = np.array([f.eval_at(values) for f in fields])
        return _stable_rank(mat, tol)

    out = [dims_of(flag)]
    new = list(flag)
    while True:
        grown = [lie_bracket(g, f) for g in D.fields for f in new]
        flag = flag + grown
        new = grown
        d = dims_of(flag)
        out.append(d)
        if d == dim or d == out[-2]:
            return out


def is_symmetry(
    V: VectorField, D: Distribution, cfg: ZeroTestConfig | None = None
) -> tuple[bool, float]:
    """True when [V, X_i] stays in the span of the distribution at samples."""
    cfg = cfg or ZeroTestConfig()
    if V.chart != D.chart:
        raise ChartMismatchError("field and distribution on different charts")
    brackets = [lie_bracket(V, Xi) for Xi in D.fields]
    params = set()
    for f in list(D.fields) + [V] + brackets:
        for c in f.components:
            params |= {s for s in free_symbols(c) if s.is_param}
    sample_syms = list(D.chart) + sorted(params, key=lambda s: s.name)
    rng = random.Random(cfg.seed)
    worst = 0.0
    good = 0
    attempts = 0
    while good < cfg.samples and attempts < 4 * cfg.samples:
        attempts += 1
        values = cfg.sample_point(sample_syms, rng)
        try:
            span = np.array([f.eval_at(values) for f in D.fields])
            for B in brackets:
                mat = np.vstack([span, B.eval_at(values)])
                sv = np.linalg.svd(mat, compute_uv=False)
                resid = float(sv[2] / sv[0]) if sv[0] > 0 else 0.0
                worst = max(worst, resid)
        except DomainError:
            continue
        good += 1
    if good == 0:
        raise DomainTooSmallError("no usable sample points for symmetry check")
    return worst <= cfg.tol, worst
