"""Named verification checks and suite runner.

Every claim the package verifies is a CheckReport with a stable id.
Suites group the checks; the runner dispatches them to a thread pool
and emits a deterministic, id-sorted report.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import liealg, maps, params, ratlin
from .catalog import (
    exact_sample_points,
    model_exp,
    model_higher,
    model_ln,
    model_N12,
    model_NS,
    model_Pm,
    model_Q,
    model_Qab,
    model_Qnm,
)
from .expr import EvalContext, Exp, Pow, R, Rat, evaluate, param, simplify
from .jet import growth_vector, is_symmetry, monge_distribution, zvar
from .zerotest import ZeroTestConfig, is_zero

F = Fraction


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    status: str  # pass | fail | skipped-domain
    max_residual: float
    samples: int
    seed: int
    wall_time: float
    inputs: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _report(check_id, ok, resid, cfg, t0, inputs=None, detail=""):
    return CheckReport(
        check_id,
        "pass" if ok else "fail",
        float(resid),
        cfg.samples,
        cfg.seed,
        time.time() - t0,
        inputs or {},
        detail,
    )


# ---------------------------------------------------------------------------
# individual checks (each: cfg -> CheckReport)
# ---------------------------------------------------------------------------

_CHECKS: dict = {}


def check(check_id: str):
    def deco(fn):
        _CHECKS[check_id] = fn
        return fn

    return deco


def _model_by_key(key):
    if key.startswith("Pm:"):
        return model_Pm(F(key[3:]))
    if key.startswith("Qab:"):
        a, b = key[4:].split(",")
        return model_Qab(F(a), F(b))
    builders = {"N12": model_N12, "ln": model_ln, "NS": model_NS, "exp": model_exp}
    return builders[key]()


SYM_MODEL_KEYS = (
    "Pm:2", "Pm:3", "Pm:-1", "Pm:1/4", "Pm:1/2", "Pm:5",
    "Qab:2,1", "Qab:1,4", "Qab:5,2", "N12", "ln", "NS", "exp",
)


def _check_symmetries(key):
    def run(cfg):
        t0 = time.time()
        mo = _model_by_key(key)
        D = mo.distribution()
        worst = 0.0
        bad = []
        for name, V in mo.symmetries.items():
            ok, r = is_symmetry(V, D, cfg)
            worst = max(worst, r)
            if not ok:
                bad.append(name)
        # linear independence: stack evaluations at 3 exact points
        pts = exact_sample_points(mo, 3)
        mat = np.vstack([
            np.array([f.eval_at(pt) for f in mo.symmetry_fields()]).T for pt in pts
        ])
        rank7 = np.linalg.matrix_rank(mat) == 7
        detail = ""
        if bad:
            detail = f"not symmetries: {bad}"
        if not rank7:
            detail += " fields dependent"
        return _report(f"sym.fields.{key}", not bad and rank7, worst, cfg, t0,
                       {"model": key})
    return run


for _k in SYM_MODEL_KEYS:
    _CHECKS[f"sym.fields.{_k}"] = _check_symmetries(_k)


def _check_growth(key):
    def run(cfg):
        t0 = time.time()
        mo = _model_by_key(key)
        D = mo.distribution()
        rng = random.Random(cfg.seed)
        ok = True
        for _ in range(10):
            pt = cfg.sample_point(mo.chart, rng)
            gv = growth_vector(D, [pt[v.name] for v in mo.chart])
            if gv[:3] != [2, 3, 5]:
                ok = False
        return _report(f"sym.growth.{key}", ok, 0.0, cfg, t0, {"model": key})
    return run


for _k in SYM_MODEL_KEYS:
    _CHECKS[f"sym.growth.{_k}"] = _check_growth(_k)


@check("structure.power.brackets")
def _structure_power(cfg):
    t0 = time.time()
    mo = model_Pm(3)
    alg = liealg.structure_constants_model(mo, cfg)
    idx = {n: i for i, n in enumerate(alg.names)}
    ok = alg.exact
    # [W1, W5] = W3 and [W2, W7] = -(1/3) W3
    want = {(0, 0, 0, 1, 0, 0, 0): None}
    c15 = alg.tensor[idx["W1"]][idx["W5"]]
    ok &= c15 == tuple(F(int(n == "W3")) for n in alg.names)
    c27 = alg.tensor[idx["W2"]][idx["W7"]]
    ok &= c27 == tuple(F(-1, 3) if n == "W3" else F(0) for n in alg.names)
    # all other h_-1 brackets vanish
    h1 = ["W1", "W2", "W5", "W7"]
    for i, a in enumerate(h1):
        for b in h1[:i]:
            if {a, b} in ({"W1", "W5"}, {"W2", "W7"}):
                continue
            ok &= all(v == 0 for v in alg.tensor[idx[a]][idx[b]])
    grading = liealg.grading_check(
        alg, liealg.coeff_vector(alg, {"W4": 1}),
        {"W1": -1, "W2": -1, "W5": -1, "W7": -1, "W3": -2},
    )
    ok &= grading.ok
    ok &= liealg.derived_series(alg) == [7, 5, 1, 0]
    return _report("structure.power.brackets", ok, alg.max_residual, cfg, t0, {"m": "3"})


@check("structure.ln.brackets")
def _structure_ln(cfg):
    t0 = time.time()
    alg = liealg.structure_constants_model(model_ln(), cfg)
    idx = {n: i for i, n in enumerate(alg.names)}
    ok = alg.exact
    c15 = alg.tensor[idx["V1"]][idx["V5"]]
    ok &= c15 == tuple(F(int(n == "V3")) for n in alg.names)
    c27 = alg.tensor[idx["V2"]][idx["V7"]]
    ok &= c27 == tuple(F(-1) if n == "V3" else F(0) for n in alg.names)
    grading = liealg.grading_check(
        alg, liealg.coeff_vector(alg, {"V4": 1}),
        {"V1": -1, "V2": -1, "V5": -1, "V7": -1, "V3": -2},
    )
    ok &= grading.ok
    ok &= liealg.derived_series(alg) == [7, 5, 1, 0]
    # printed ad(V6) action on h_-1
    h1 = [idx[n] for n in ("V1", "V2", "V5", "V7")]
    M = liealg.ad_restricted(alg, liealg.coeff_vector(alg, {"V6": 1}), h1)
    ok &= M == ratlin.mat([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, -1, 1], [0, 0, 0, -1]])
    return _report("structure.ln.brackets", ok, alg.max_residual, cfg, t0)


@check("structure.frame.decomposition")
def _structure_frame(cfg):
    t0 = time.time()
    mo = model_Pm(3)
    s = mo.symmetries
    from .catalog import w6prime
    frame = [s["W1"], s["W2"], s["W3"], s["W5"], w6prime(mo)]
    coeffs = liealg.frame_decompose(s["W4"], frame, cfg)
    from .jet import X, Y, Z
    z1 = zvar(1)
    want = [X, Y, simplify(2 * Z - X * z1), z1, R(0)]
    ok = all(bool(is_zero(simplify(c - w), cfg)) for c, w in zip(coeffs, want))
    return _report("structure.frame.decomposition", ok, 0.0, cfg, t0)


@check("jordan.power")
def _jordan_power(cfg):
    t0 = time.time()
    h1names = ("W1", "W2", "W5", "W7")
    ok = True
    for m, want in ((F(3), (1, 1, 1, 1)), (F(1, 2), (1, 1, 2))):
        alg = liealg.structure_constants_model(model_Pm(m), cfg)
        idx = {n: i for i, n in enumerate(alg.names)}
        w6p = liealg.coeff_vector(alg, {"W6": 1, "W4": F(-1, 2)})
        M = liealg.ad_restricted(alg, w6p, [idx[n] for n in h1names])
        ok &= ratlin.jordan_blocks(M) == want
        if m == F(3):
            ok &= set(ratlin.eigen_rational(M)) == {F(1, 2), F(-1, 2), F(5, 2), F(-5, 2)}
        else:
            # single off-diagonal entry couples the two eigenvalue-0 slots
            ok &= M[idx2(h1names, "W2")][idx2(h1names, "W7")] == F(-1, 2)
    return _report("jordan.power", ok, 0.0, cfg, t0)


def idx2(names, n):
    return list(names).index(n)


@check("jordan.ln")
def _jordan_ln(cfg):
    t0 = time.time()
    alg = liealg.structure_constants_model(model_ln(), cfg)
    idx = {n: i for i, n in enumerate(alg.names)}
    M = liealg.ad_restricted(
        alg, liealg.coeff_vector(alg, {"V6": 1}),
        [idx[n] for n in ("V1", "V2", "V5", "V7")],
    )
    ok = ratlin.jordan_blocks(M) == (2, 2)
    return _report("jordan.ln", ok, 0.0, cfg, t0)


def _equiv_check(check_id, make_map, make_src, make_tgt, inputs):
    def run(cfg):
        t0 = time.time()
        rep = maps.check_equivalence(make_map(), make_src(), make_tgt(), cfg)
        return _report(check_id, rep.ok, rep.max_residual, cfg, t0, inputs, rep.detail)
    return run


for _m in (F(2), F(3), F(3, 4), F(5)):
    _CHECKS[f"maps.Ta.m={_m}"] = _equiv_check(
        f"maps.Ta.m={_m}", (lambda m=_m: maps.map_Ta(m)),
        (lambda m=_m: model_Pm(m)), (lambda m=_m: model_Pm(1 - m)), {"m": str(_m)})
    _CHECKS[f"maps.Tb.m={_m}"] = _equiv_check(
        f"maps.Tb.m={_m}", (lambda m=_m: maps.map_Tb(m)),
        (lambda m=_m: model_Pm(m)), (lambda m=_m: model_Pm(m / (2 * m - 1))), {"m": str(_m)})
    _CHECKS[f"maps.TbPrinted.m={_m}"] = _equiv_check(
        f"maps.TbPrinted.m={_m}", (lambda m=_m: maps.map_Tb_printed(m)),
        (lambda m=_m: model_Pm(m)), (lambda m=_m: model_Pm(m / (2 * m - 1))), {"m": str(_m)})

for _m in (F(2), F(3), F(5)):
    _CHECKS[f"maps.Psi.m={_m}"] = _equiv_check(
        f"maps.Psi.m={_m}", (lambda m=_m: maps.map_Psi(m)),
        (lambda m=_m: model_Qnm(m)), (lambda m=_m: model_Pm(m)), {"m": str(_m)})

_CHECKS["maps.PsiBar"] = _equiv_check(
    "maps.PsiBar", maps.map_PsiBar, model_N12, lambda: model_Pm(F(1, 2)), {})
_CHECKS["maps.Phi"] = _equiv_check("maps.Phi", maps.map_Phi, model_NS, model_ln, {})
_CHECKS["maps.Upsilon"] = _equiv_check(
    "maps.Upsilon", maps.map_Upsilon, model_exp, lambda: model_Pm(F(1, 2)), {})
_CHECKS["maps.Tcomp"] = _equiv_check(
    "maps.Tcomp", maps.map_Tcomp, model_N12, model_exp, {})


@check("maps.Tcomp.inverse-composition")
def _tcomp_inverse(cfg):
    t0 = time.time()
    PB, Tc, U = maps.map_PsiBar(), maps.map_Tcomp(), maps.map_Upsilon()
    rng = random.Random(cfg.seed)
    worst = 0.0
    for _ in range(min(cfg.samples, 16)):
        p = [rng.uniform(-1.2, 1.2) for _ in range(4)] + [rng.uniform(0.6, 1.8)]
        q = [complex(v).real for v in PB.apply(p)]
        t = [complex(v).real for v in Tc.apply(p)]
        x0 = [v * (1 + rng.uniform(-0.05, 0.05)) + rng.uniform(-0.02, 0.02) for v in t]
        u = maps.invert_pointwise(U, q, x0)
        worst = max(worst, max(abs(a - b) for a, b in zip(u, t)))
    return _report("maps.Tcomp.inverse-composition", worst < 1e-6, worst, cfg, t0)


@check("maps.Tcomp.printed-is-forward-composition")
def _tcomp_printed(cfg):
    t0 = time.time()
    from .expr import subst
    U, PB, TcP = maps.map_Upsilon(), maps.map_PsiBar(), maps.map_Tcomp_printed()
    bind = dict(zip(U.chart, PB.components))
    worst = 0.0
    ok = True
    for c, p in zip(U.components, TcP.components):
        zr = is_zero(simplify(subst(c, bind) - p), cfg)
        worst = max(worst, zr.max_residual)
        ok &= bool(zr)
    return _report("maps.Tcomp.printed-is-forward-composition", ok, worst, cfg, t0)


@check("maps.prolongation")
def _prolongation(cfg):
    t0 = time.time()
    cases = [
        ("Ta", maps.map_Ta(3), model_Pm(3)),
        ("Tb", maps.map_Tb(3), model_Pm(3)),
        ("Psi", maps.map_Psi(3), model_Qnm(3)),
        ("Phi", maps.map_Phi(), model_NS()),
        ("Upsilon", maps.map_Upsilon(), model_exp()),
    ]
    bad = []
    for name, T, src in cases:
        res = maps.prolong(T.components[0], T.components[2], T.components[1],
                           src.rhs, 2, cfg)
        ok1 = is_zero(simplify(res.pmap.components[3] - T.components[3]), cfg)
        ok2 = is_zero(simplify(res.pmap.components[4] - T.components[4]), cfg)
        if not (ok1 and ok2):
            bad.append(name)
    return _report("maps.prolongation", not bad, 0.0, cfg, t0,
                   detail=f"failures: {bad}" if bad else "")


@check("dihedral.relations")
def _dihedral(cfg):
    t0 = time.time()
    rep = maps.dihedral_suite([F(2), F(3), F(-1), F(1, 4), F(5)], cfg)
    return _report("dihedral.relations", rep.ok, rep.max_residual, cfg, t0,
                   detail="; ".join(rep.failures))


@check("dihedral.parameter-orbit")
def _dihedral_orbit(cfg):
    t0 = time.time()
    ok = params.orbit_m(2).elements == (F(-1), F(1, 3), F(2, 3), F(2))
    ok &= params.orbit_k(3).elements == (F(-3), F(-1, 3), F(1, 3), F(3))
    rep = params.subgroup_report()
    ok &= rep.kernel == ("e", "zeta")
    ok &= rep.z4_normal and len(rep.z4_subgroup) == 4
    ok &= rep.g1_image == ((0, 0), (1, 0)) and rep.g2_image == ((0, 0), (0, 1))
    ok &= params.project_p(params.DIH4_BY_NAME["ab"]) == (1, 1)
    ok &= params.project_p(params.DIH4_ZETA) == (0, 0)
    # group action law on 50 random rational m
    rng = random.Random(cfg.seed)
    for _ in range(50):
        m = F(rng.randint(-40, 40), rng.randint(1, 9))
        if 2 * m == 1:
            continue
        for g in params.G_ELEMENTS:
            for h in params.G_ELEMENTS:
                try:
                    lhs = params.act(g, params.act(h, m))
                    gh = ((g[0] + h[0]) % 2, (g[1] + h[1]) % 2)
                    ok &= lhs == params.act(gh, m)
                except params.ExcludedPointError:
                    pass
    return _report("dihedral.parameter-orbit", ok, 0.0, cfg, t0)


@check("invariants.J-invariance")
def _inv_j(cfg):
    t0 = time.time()
    rng = random.Random(cfg.seed)
    ok = True
    for _ in range(100):
        m = F(rng.randint(-60, 60), rng.randint(1, 12))
        if 2 * m == 1:
            continue
        J = liealg.invariant_J(m)
        ok &= liealg.invariant_J(1 - m) == J
        ok &= liealg.invariant_J(m / (2 * m - 1)) == J
        k = 2 * m - 1
        ok &= J == F(4 * k * k, (k * k + 1) ** 2)
    # symbolic closed form in m
    mm = param("m")
    k = 2 * mm - 1
    lhs = Pow(1 - 2 * mm, R(2)) / Pow(1 - 2 * mm + 2 * mm * mm, R(2))
    rhs = 4 * k * k / Pow(k * k + 1, R(2))
    zr = is_zero(simplify(lhs - rhs), cfg)
    ok &= bool(zr)
    return _report("invariants.J-invariance", ok, zr.max_residual, cfg, t0)


@check("invariants.cross-family")
def _inv_cross(cfg):
    t0 = time.time()
    rng = random.Random(cfg.seed)
    ok = True
    for _ in range(100):
        m = F(rng.randint(-60, 60), rng.randint(1, 12))
        k = 2 * m - 1
        if k == 0 or k in liealg._G2_K:
            continue
        a, b = F(1, 2), m - F(1, 2)
        r1, r2 = a * a + b * b, a * a * b * b
        ok &= r1 == F(k * k + 1, 4) and r2 == F(k * k, 16)
        i2q = liealg.invariant_I2_q(r1, r2)
        i2k = liealg.invariant_I2_k(k)
        ok &= i2q == i2k
        J = liealg.invariant_J(m)
        if not i2k.infinite and i2k.value != 0:
            ok &= 25 * J == 9 * (1 + 1 / i2k.value)
    return _report("invariants.cross-family", ok, 0.0, cfg, t0)


@check("invariants.G2-loci")
def _inv_g2(cfg):
    t0 = time.time()
    ok = True
    for k in (F(3), F(-3), F(1, 3), F(-1, 3)):
        v = liealg.invariant_I2_k(k)
        ok &= v.infinite and v.g2
    v = liealg.invariant_I2_q(10, 9)  # (a,b) = (3,1): r2 = 9 r1^2/100
    ok &= v.infinite and v.g2
    rec = liealg.invariant_record(2)
    ok &= rec.J == F(9, 25) and rec.I2.infinite and rec.consistent and rec.g2
    ok &= liealg.invariant_J(F(1, 2)) == 0
    try:
        liealg.invariant_I2_q(0, 1)
        ok = False
    except liealg.FormulaPoleError:
        pass
    # the r1 = (10/3) I0, r2 = 1 + I0^2 normal form reproduces I0^2
    for i0 in (F(2), F(1, 3), F(-5, 4)):
        ok &= liealg.invariant_I2_q(F(10, 3) * i0, 1 + i0 * i0) == i0 * i0
    return _report("invariants.G2-loci", ok, 0.0, cfg, t0)


@check("higher.growth")
def _higher_growth(cfg):
    t0 = time.time()
    rng = random.Random(cfg.seed)
    ok = True
    mo = model_higher(3, (0, 0, 0))
    D = mo.distribution()
    for _ in range(5):
        pt = cfg.sample_point(mo.chart, rng)
        gv = growth_vector(D, [pt[v.name] for v in mo.chart])
        ok &= gv == [2, 3, 5, 6]
    lin = monge_distribution(zvar(2), 2)
    for _ in range(5):
        pt = cfg.sample_point(lin.chart, rng)
        gv = growth_vector(lin, [pt[v.name] for v in lin.chart])
        ok &= gv == [2, 3, 4, 4]
    return _report("higher.growth", ok, 0.0, cfg, t0)


@check("higher.coefficients")
def _higher_coeffs(cfg):
    t0 = time.time()
    mo = model_higher(3, (35, 259, 225))
    z3 = zvar(3)
    want = simplify(
        Pow(z3, R(2)) + 35 * Pow(zvar(2), R(2)) + 259 * Pow(zvar(1), R(2))
        + 225 * Pow(__import__("monge235.jet", fromlist=["Z"]).Z, R(2))
    )
    ok = mo.rhs == want
    ok &= model_higher(2, (F(5), F(4))).rhs == model_Q(5, 4).rhs
    # Qnm coefficients match (a, b) = (1/2, m - 1/2)
    for m in (F(2), F(3), F(-2, 3)):
        a, b = F(1, 2), m - F(1, 2)
        ok &= model_Qnm(m).rhs == model_Q(a * a + b * b, a * a * b * b).rhs
    return _report("higher.coefficients", ok, 0.0, cfg, t0)


@check("weyl.roundtrip")
def _weyl_roundtrip(cfg):
    t0 = time.time()
    rng = random.Random(cfg.seed)
    worst = 0.0
    for _ in range(100):
        n = rng.randint(1, 4)
        roots = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)]
        coeffs = params.coeffs_from_roots(roots)
        rd = params.roots_from_coeffs(coeffs)
        back = params.coeffs_from_roots(rd.roots)
        scale = max(1.0, max(abs(c) for c in coeffs))
        worst = max(worst, max(abs(a - b) for a, b in zip(coeffs, back)) / scale)
    ok = worst < 1e-9
    ok &= params.coeffs_from_roots((1, 3)) == (10, 9)
    ok &= params.coeffs_from_roots((1, 3, 5)) == (35, 259, 225)
    return _report("weyl.roundtrip", ok, worst, cfg, t0)


@check("weyl.orbits-and-strata")
def _weyl_orbits(cfg):
    t0 = time.time()
    ok = len(params.weyl_orbit((1, 3))) == 4
    ok &= len(params.weyl_orbit((1, 2, 5))) == 24
    ok &= params.arithmetic_stratum((1, 3)) is True
    ok &= params.arithmetic_stratum((1, 2)) is False
    ok &= params.arithmetic_stratum((1, 3, 5)) is True
    ok &= all(params.arithmetic_stratum(t) for t in params.weyl_orbit((1, 3)))
    ok &= not any(params.arithmetic_stratum(t) for t in params.weyl_orbit((1, 2)))
    ok &= params.orbit_kappa(0).cardinality == 2
    ok &= params.orbit_kappa(1).cardinality == 2
    ok &= params.canonical_kappa(2) == 0.5
    orb = params.orbit_kappa(0.4 + 0.3j)
    ok &= orb.cardinality == 4
    can = params.canonical_kappa(0.4 + 0.3j)
    ok &= all(
        abs(params.canonical_kappa(v) - can) < 1e-9 for v in orb.elements
    )
    return _report("weyl.orbits-and-strata", ok, 0.0, cfg, t0)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

SUITES = {
    "sym": lambda cid: cid.startswith("sym."),
    "structure": lambda cid: cid.startswith(("structure.", "jordan.")),
    "maps": lambda cid: cid.startswith("maps."),
    "dihedral": lambda cid: cid.startswith("dihedral."),
    "invariants": lambda cid: cid.startswith("invariants."),
    "higher": lambda cid: cid.startswith("higher."),
    "weyl": lambda cid: cid.startswith("weyl."),
}


def list_checks(suite: str = "all") -> list:
    if suite == "all":
        return sorted(_CHECKS)
    try:
        pred = SUITES[suite]
    except KeyError:
        raise KeyError(f"unknown suite {suite!r}; choose from {['all'] + sorted(SUITES)}")
    return sorted(cid for cid in _CHECKS if pred(cid))


def run_suite(suite: str = "all", cfg: ZeroTestConfig | None = None,
              workers: int = 4) -> list:
    """Run the selected checks concurrently; reports sorted by id."""
    cfg = cfg or ZeroTestConfig()
    ids = list_checks(suite)

    def run_one(cid):
        try:
            return _CHECKS[cid](cfg)
        except Exception as exc:  # surfaced, never swallowed silently
            return CheckReport(cid, "fail", float("nan"), cfg.samples, cfg.seed,
                               0.0, {}, f"exception: {exc}")

    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(run_one, ids))
    return sorted(reports, key=lambda r: r.check_id)


def run_pm_checks(m, cfg: ZeroTestConfig | None = None) -> list:
    """Ad-hoc symmetry and growth checks for the power family at m.

    Raises SingularParameterError at the excluded linear parameters.
    """
    cfg = cfg or ZeroTestConfig()
    model_Pm(F(m))  # validate the parameter before running anything
    key = f"Pm:{F(m)}"
    return [_check_symmetries(key)(cfg), _check_growth(key)(cfg)]


def reports_to_json(reports) -> str:
    payload = []
    for r in reports:
        d = asdict(r)
        d["max_residual"] = None if r.max_residual != r.max_residual else r.max_residual
        payload.append(d)
    return json.dumps(payload, indent=2, default=str)
