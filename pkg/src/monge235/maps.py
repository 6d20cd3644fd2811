"""Equivalence transformations between Monge models.

PointMaps are fibered: each carries its source and target fiber (model
label plus parameter), and maps compose only when the fibers match.
Includes the printed transformations between the catalog models, jet
prolongation of base maps, pushforward equivalence checking, and the
dihedral identity suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .catalog import model_N12, model_Pm, model_Qnm, model_exp, model_ln, model_NS
from .expr import (
    HALF,
    ZERO,
    DomainError,
    EvalContext,
    Exp,
    Expr,
    Pow,
    R,
    Rat,
    as_expr,
    diff,
    evaluate,
    simplify,
    subst,
)
from .jet import (
    X,
    Y,
    Z,
    ChartMismatchError,
    Distribution,
    annihilator_forms,
    jet_chart,
    spare_symbol,
    total_derivative,
    zvar,
)
from .zerotest import DomainTooSmallError, ZeroTestConfig, is_zero

Z1, Z2 = zvar(1), zvar(2)
CHART5 = jet_chart(2)


class FiberMismatchError(ValueError):
    pass


class InvalidParameterError(ValueError):
    pass


@dataclass(frozen=True)
class PointMap:
    name: str
    chart: tuple
    target_chart: tuple
    components: tuple
    source: tuple  # (model label, parameter or None)
    target: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "components", tuple(simplify(as_expr(c)) for c in self.components)
        )

    def apply(self, point):
        """Numeric image of a point (sequence in source-chart order)."""
        values = {v.name: q for v, q in zip(self.chart, point)}
        return tuple(evaluate(c, EvalContext(values)) for c in self.components)


def identity_map(fiber=("Pm", None)) -> PointMap:
    return PointMap("Id", CHART5, CHART5, CHART5, fiber, fiber)


def compose(f: PointMap, g: PointMap) -> PointMap:
    """f after g (apply g first); fibers must match."""
    if g.target != f.source:
        raise FiberMismatchError(
            f"cannot compose: {g.name} targets {g.target} but {f.name} starts at {f.source}"
        )
    bind = dict(zip(f.chart, g.components))
    comps = tuple(subst(c, bind) for c in f.components)
    return PointMap(f"{f.name}*{g.name}", g.chart, f.target_chart, comps, g.source, f.target)


# ---------------------------------------------------------------------------
# parameter actions on m
# ---------------------------------------------------------------------------

def act_a(m: Fraction) -> Fraction:
    return 1 - m


def act_b(m: Fraction) -> Fraction:
    if 2 * m == 1:
        raise InvalidParameterError("b-action undefined at m = 1/2")
    return m / (2 * m - 1)


def _check_m(m, exclude=(0, Fraction(1, 2), 1)) -> Fraction:
    m = Fraction(m)
    if m in [Fraction(e) for e in exclude]:
        raise InvalidParameterError(f"parameter m = {m} excluded")
    return m


# ---------------------------------------------------------------------------
# builtin maps
# ---------------------------------------------------------------------------

def map_Ta(m) -> PointMap:
    """Legendre transform, fiber m -> 1 - m."""
    m = _check_m(m, exclude=(0, 1))
    comps = (Z1, Y, X * Z1 - Z, X, 1 / Z2)
    return PointMap("Ta", CHART5, CHART5, comps, ("Pm", m), ("Pm", act_a(m)))


def _tb_raw(me: Rat):
    """The printed transformation to the fiber m/(2m-1)."""
    s = Pow(2 * me - 1, HALF)
    return (
        X * Pow(Z2, 1 - me) / s,
        (me * Z1 - (me - 1) * X * Z2) / s,
        Z - X * Z1 + X * Y * Pow(Z2, 1 - me) / me
        + (me - 1) * (me - 1) / (me * (2 * me - 1)) * X * X * Z2,
        s / me * Y - (me - 1) / (me * s) * X * Pow(Z2, me),
        Pow(Z2, 2 * me - 1),
    )


def map_Tb_printed(m) -> PointMap:
    """Verbatim printed formula; contains sqrt(2m-1).

    Defined for m outside {0, 1/2}: at m = 1 the formula still
    evaluates (sqrt(1) = 1) even though the image fiber is the
    excluded linear model.
    """
    m = _check_m(m, exclude=(0, Fraction(1, 2)))
    return PointMap(
        "TbPrinted", CHART5, CHART5, _tb_raw(Rat(m)), ("Pm", m), ("Pm", act_b(m))
    )


def map_Tb(m) -> PointMap:
    """Root-free representative of the b-move.

    The printed formula composed with the scaling flow of the grading
    symmetry by factor sqrt(2m-1); this removes the square root, is
    defined for all m outside {0, 1/2}, and satisfies the full set
    of dihedral relations under one fixed convention.
    """
    m = _check_m(m, exclude=(0, Fraction(1, 2)))
    me = Rat(m)
    comps = (
        X * Pow(Z2, 1 - me),
        me * Z1 - (me - 1) * X * Z2,
        (2 * me - 1)
        * (
            Z - X * Z1 + X * Y * Pow(Z2, 1 - me) / me
            + (me - 1) * (me - 1) / (me * (2 * me - 1)) * X * X * Z2
        ),
        (2 * me - 1) / me * Y - (me - 1) / me * X * Pow(Z2, me),
        Pow(Z2, 2 * me - 1),
    )
    return PointMap("Tb", CHART5, CHART5, comps, ("Pm", m), ("Pm", act_b(m)))


def map_Tzeta(m) -> PointMap:
    """The anomaly map: fixes the fiber, squares to the identity."""
    m = _check_m(m)
    me = Rat(m)
    mu = me / (2 * me - 1)
    comps = (
        (2 * me - 1) / (me - 1) * Y * Pow(Z2, 1 - me) - me / (me - 1) * Z1,
        Y * Pow(Z2, 1 - 2 * me),
        (Y * Y * Pow(Z2, 1 - 2 * me) - X * Y * Pow(Z2, 1 - me)) / mu
        + X * Z1 - Z,
        Y * Pow(Z2, -1 * me) / mu - (me - 1) / me * X,
        Pow(Z2, R(-1)),
    )
    return PointMap("Tzeta", CHART5, CHART5, comps, ("Pm", m), ("Pm", m))


def map_Psi(m) -> PointMap:
    """Quadratic-to-power equivalence on the matched parameters.

    The z^2 coefficient of the third component is 1/4*(m^2-2m+3/4),
    not 1/2*(...): the 1/2 variant fails the contact condition by a
    z*z1 cross term for every m, while 1/4 makes the defect vanish
    identically.
    """
    m = _check_m(m)
    me = Rat(m)
    comps = (
        (Z2 / me + Z1 + (2 * me - 1) / (4 * me) * Z) * Exp(-1 * X / 2),
        (Z2 - Z / 4) / me * Exp((me - HALF) * X),
        (
            Y - (me - HALF) * Z * Z2 + 2 * (me - 1) * Z1 * Z2 + Z2 * Z2
            + me * (me - 1) * Z1 * Z1 - me * (me - HALF) * Z * Z1
            - R(1, 4) * (me * me - 2 * me + R(3, 4)) * Z * Z
        ) / (2 * me * me),
        (Z2 + (me - 1) * Z1 - HALF * (me - HALF) * Z) / me * Exp(X / 2),
        Exp(X),
    )
    return PointMap("Psi", CHART5, CHART5, comps, ("Qnm", m), ("Pm", m))


def map_PsiBar() -> PointMap:
    """Equivalence from the (a,b) = (1,0) quadratic model to the m = 1/2 power model."""
    comps = (
        (Z2 - Z1) * Exp(X),
        Z2 - Z,
        (Z2 * Z2 - Z1 * Z1) / 2 + Z1 * Z2 - Y,
        (Z1 + Z2) * Exp(-1 * X),
        Exp(-2 * X),
    )
    return PointMap("PsiBar", CHART5, CHART5, comps, ("N12", None), ("Pm", Fraction(1, 2)))


def map_Phi() -> PointMap:
    """Equivalence from the a = b quadratic model to the logarithmic model."""
    comps = (
        HALF * (Z - Z2) * Exp(X),
        (X * Z2 - Z1 - (X - 1) * Z) * Exp(X),
        (Z2 * (Z2 + 2 * Z) - 3 * Z * Z + 4 * Z1 * Z2 - 2 * Y) / 8,
        R(-1, 2) * (Z2 + 2 * Z1 + Z) * Exp(-1 * X),
        Exp(-2 * X),
    )
    return PointMap("Phi", CHART5, CHART5, comps, ("NS", None), ("ln", None))


def map_Upsilon() -> PointMap:
    """Equivalence from the exponential model to the m = 1/2 power model."""
    comps = (
        2 * Y - X * Exp(Z2),
        X + Z1 - X * Z2,
        2 * (X * Z1 - Z) - X * X * (Z2 - HALF),
        X * Exp(-1 * Z2),
        Exp(-2 * Z2),
    )
    return PointMap("Upsilon", CHART5, CHART5, comps, ("exp", None), ("Pm", Fraction(1, 2)))


def map_Tcomp() -> PointMap:
    """Composite from the (1,0) quadratic model to the exponential model.

    Closed form of the inverse of the exponential-model equivalence
    applied after the (1,0)-model equivalence.  The transcribed
    composite formula (see map_Tcomp_printed) is instead the *forward*
    exponential-model equivalence applied after the (1,0)-model one,
    which is not an equivalence between these two models; the corrected
    closed form below is, and matches the numerically inverted
    composition.
    """
    s = Z1 + Z2
    comps = (
        s,
        Z2 * Exp(X),
        HALF * X * s * s - Z * s + HALF * Y - HALF * Z1 * Z1 - Z1 * Z2,
        X * s - Z - Z1,
        X,
    )
    return PointMap("Tcomp", CHART5, CHART5, comps, ("N12", None), ("exp", None))


def map_Tcomp_printed() -> PointMap:
    """Verbatim transcription of the composite formula; extensionally
    equal to the forward composition of the exponential-model map with
    the (1,0)-model map (see map_Tcomp)."""
    e2x = Exp(-2 * X)
    comps = (
        Exp(X + e2x) * (Z1 - Z2) + 2 * (Z2 - Z),
        2 * Z1 * Exp(-1 * X) + (Z2 - Z1) * Exp(X),
        2 * (Y - Z1 * Z1) + HALF * Exp(2 * X) * Pow(Z1 - Z2, R(2)),
        -1 * Exp(X - e2x) * (Z1 - Z2),
        Exp(-2 * e2x),
    )
    return PointMap("TcompPrinted", CHART5, CHART5, comps, ("N12", None), ("exp", None))


_BUILTINS = {
    "Ta": lambda m=None, **kw: map_Ta(m),
    "Tb": lambda m=None, **kw: map_Tb(m),
    "TbPrinted": lambda m=None, **kw: map_Tb_printed(m),
    "Tzeta": lambda m=None, **kw: map_Tzeta(m),
    "Psi": lambda m=None, **kw: map_Psi(m),
    "PsiBar": lambda **kw: map_PsiBar(),
    "Phi": lambda **kw: map_Phi(),
    "Upsilon": lambda **kw: map_Upsilon(),
    "Tcomp": lambda **kw: map_Tcomp(),
    "TcompPrinted": lambda **kw: map_Tcomp_printed(),
}


def builtin(name: str, **params) -> PointMap:
    try:
        make = _BUILTINS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown map {name!r}; choose from {sorted(_BUILTINS)}"
        ) from None
    return make(**params)


def builtin_names() -> list:
    return sorted(_BUILTINS)


def source_model(fiber: tuple):
    label, p = fiber
    factory = {
        "Pm": lambda: model_Pm(p),
        "Qnm": lambda: model_Qnm(p),
        "N12": model_N12,
        "NS": model_NS,
        "ln": model_ln,
        "exp": model_exp,
    }[label]
    return factory()


# ---------------------------------------------------------------------------
# pushforward / equivalence checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapCheckReport:
    ok: bool
    max_residual: float
    samples: int
    detail: str = ""


def pushforward_check(
    T: PointMap, src: Distribution, tgt: Distribution, cfg: ZeroTestConfig | None = None
) -> MapCheckReport:
    """Check that the pushforward of the source span annihilates the
    target Pfaffian forms at random samples (no map inversion)."""
    cfg = cfg or ZeroTestConfig()
    if T.chart != src.chart or T.target_chart != tgt.chart:
        raise ChartMismatchError("map charts do not match the distributions")
    pushes = [
        [Xf.apply(c) for c in T.components] for Xf in src.fields
    ]
    forms = annihilator_forms(tgt)
    rng = random.Random(cfg.seed)
    worst = 0.0
    good = 0
    attempts = 0
    while good < cfg.samples and attempts < 4 * cfg.samples:
        attempts += 1
        values = cfg.sample_point(src.chart, rng)
        try:
            image = [evaluate(c, EvalContext(values)) for c in T.components]
            tvalues = {v.name: complex(q) for v, q in zip(tgt.chart, image)}
            for push in pushes:
                pv = [complex(evaluate(c, EvalContext(values))) for c in push]
                scale = max(1.0, max(abs(v) for v in pv))
                for a, g, b in forms:
                    gv = complex(evaluate(g, EvalContext(tvalues)))
                    resid = abs(pv[a] - gv * pv[b]) / max(scale, abs(gv))
                    worst = max(worst, resid)
        except DomainError:
            continue
        good += 1
    if good == 0:
        raise DomainTooSmallError("no usable sample points for pushforward check")
    return MapCheckReport(worst <= cfg.tol, worst, good)


@dataclass(frozen=True)
class ProlongResult:
    pmap: PointMap
    rhs: Expr  # the transformed right-hand side candidate ybar1


class ProlongationError(ArithmeticError):
    """The spare jet symbol fails to cancel: the base map is not
    contact-compatible."""


def prolong(psi: Expr, phi: Expr, phi_y: Expr, f: Expr, n: int = 2,
            cfg: ZeroTestConfig | None = None) -> ProlongResult:
    """Lift base components (xbar, zbar, ybar) = (psi, phi, phi_y) to the
    jet variables via total-derivative quotients."""
    cfg = cfg or ZeroTestConfig()
    D = total_derivative(f, n)
    spare = spare_symbol(n)
    dpsi = D(psi)

    def quotient(g: Expr) -> Expr:
        q = simplify(D(g) / dpsi)
        d = diff(q, spare)
        if not is_zero(d, cfg):
            raise ProlongationError(
                f"spare symbol {spare.name} does not cancel in the prolongation"
            )
        return subst(q, {spare: ZERO})

    zbars = [quotient(phi)]
    for _ in range(1, n):
        zbars.append(quotient(zbars[-1]))
    rhs = quotient(phi_y)
    chart = jet_chart(n)
    comps = (psi, phi_y, phi) + tuple(zbars)
    pmap = PointMap("prolonged", chart, chart, comps, ("user", None), ("user", None))
    return ProlongResult(pmap, rhs)


def check_equivalence(T: PointMap, src, tgt, cfg: ZeroTestConfig | None = None) -> MapCheckReport:
    """Full equivalence check of a map between two catalog models.

    Pushforward of the span annihilates the target forms, and the
    prolonged right-hand side matches the target RHS composed with T.
    """
    cfg = cfg or ZeroTestConfig()
    rep = pushforward_check(T, src.distribution(), tgt.distribution(), cfg)
    if not rep.ok:
        return MapCheckReport(False, rep.max_residual, rep.samples, "pushforward failed")
    # ybar1-consistency
    D = total_derivative(src.rhs, src.order)
    spare = spare_symbol(src.order)
    ybar1 = simplify(D(T.components[1]) / D(T.components[0]))
    bind = dict(zip(tgt.chart, T.components))
    delta = simplify(ybar1 - subst(tgt.rhs, bind))
    zr = is_zero(delta, cfg)
    if not zr:
        return MapCheckReport(False, zr.max_residual, zr.samples, "rhs mismatch")
    return MapCheckReport(True, max(rep.max_residual, zr.max_residual), rep.samples)


def maps_equal(f: PointMap, g: PointMap, cfg: ZeroTestConfig | None = None) -> MapCheckReport:
    """Extensional equality at random samples (relative residual)."""
    cfg = cfg or ZeroTestConfig()
    if f.chart != g.chart:
        raise ChartMismatchError("maps on different source charts")
    rng = random.Random(cfg.seed)
    worst = 0.0
    good = 0
    attempts = 0
    while good < cfg.samples and attempts < 4 * cfg.samples:
        attempts += 1
        values = cfg.sample_point(f.chart, rng)
        try:
            fv = [complex(evaluate(c, EvalContext(values))) for c in f.components]
            gv = [complex(evaluate(c, EvalContext(values))) for c in g.components]
        except DomainError:
            continue
        good += 1
        scale = max(1.0, max(abs(v) for v in fv + gv))
        worst = max(worst, max(abs(a - b) for a, b in zip(fv, gv)) / scale)
    if good == 0:
        raise DomainTooSmallError("no usable sample points for map comparison")
    return MapCheckReport(worst <= cfg.tol, worst, good)


def invert_pointwise(T: PointMap, target_point, x0) -> tuple:
    """Numerically solve T(p) = target_point starting from x0."""
    from scipy.optimize import root

    tvals = np.array([float(v) for v in target_point], dtype=float)

    def fun(p):
        values = {v.name: q for v, q in zip(T.chart, p)}
        img = [evaluate(c, EvalContext(values)) for c in T.components]
        return np.array([float(v.real if isinstance(v, complex) else v) for v in img]) - tvals

    sol = root(fun, np.array([float(v) for v in x0], dtype=float), tol=1e-12)
    if not sol.success:
        raise ArithmeticError(f"inversion failed: {sol.message}")
    return tuple(sol.x)


# ---------------------------------------------------------------------------
# dihedral identity suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralReport:
    ok: bool
    failures: tuple
    max_residual: float


def dihedral_suite(m_samples, cfg: ZeroTestConfig | None = None) -> DihedralReport:
    """Verify the order-8 group relations of the a- and b-moves fiberwise.

    For each parameter sample: Ta^2 = Id, Tb^2 = Id, (TaTb)^2 matches
    the printed anomaly map, its square is Id, and TaTb = TbTa * zeta.
    Also checks that the anomaly map is not the identity.
    """
    cfg = cfg or ZeroTestConfig()
    failures = []
    worst = 0.0

    def expect(ok_rep, label, m):
        nonlocal worst
        worst = max(worst, ok_rep.max_residual)
        if not ok_rep.ok:
            failures.append(f"{label} failed at m={m} (residual {ok_rep.max_residual:.3g})")

    for m in m_samples:
        m = _check_m(m)
        mb = act_b(m)
        ma = act_a(m)
        ident = identity_map(("Pm", m))
        expect(maps_equal(compose(map_Ta(ma), map_Ta(m)), ident, cfg), "Ta^2=Id", m)
        expect(maps_equal(compose(map_Tb(mb), map_Tb(m)), ident, cfg), "Tb^2=Id", m)
        mab = act_a(mb)
        ab = compose(map_Ta(mb), map_Tb(m))                 # fiber m -> ab.m
        ab2 = compose(map_Ta(act_b(mab)), map_Tb(mab))      # fiber ab.m -> m
        zeta = compose(ab2, ab)
        expect(maps_equal(zeta, map_Tzeta(m), cfg), "(TaTb)^2=Tzeta", m)
        expect(maps_equal(compose(zeta, zeta), ident, cfg), "zeta^2=Id", m)
        ba_zeta = compose(compose(map_Tb(ma), map_Ta(m)), map_Tzeta(m))
        expect(maps_equal(ab, ba_zeta, cfg), "TaTb=TbTa*zeta", m)
        nontrivial = maps_equal(zeta, ident, cfg)
        if nontrivial.max_residual <= 0.1:
            failures.append(f"zeta looks like the identity at m={m}")
    return DihedralReport(not failures, tuple(failures), worst)
