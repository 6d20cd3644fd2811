from fractions import Fraction

import pytest

from monge235 import ratlin
from monge235.catalog import exact_sample_points, model_ln, model_Pm, w6prime
from monge235.expr import R
from monge235.jet import VectorField, jet_chart
from monge235.liealg import (
    ExtendedRational,
    FormulaPoleError,
    NonConstantCoefficientsError,
    ad_restricted,
    derived_series,
    grading_check,
    invariant_I2_k,
    invariant_I2_q,
    invariant_J,
    invariant_record,
    is_solvable,
    structure_constants,
    structure_constants_model,
)
from monge235.zerotest import ZeroTestConfig

F = Fraction
CHART5 = jet_chart(2)
X, Y, Z, Z1, Z2 = CHART5


def _vf(*comps):
    from monge235.expr import as_expr
    return VectorField(CHART5, tuple(as_expr(c) for c in comps))


def test_abelian_frame_has_zero_tensor():
    fields = [_vf(1, 0, 0, 0, 0), _vf(0, 1, 0, 0, 0), _vf(0, 0, 1, 0, 0)]
    pts = exact_sample_points(model_Pm(3), 3)
    alg = structure_constants(fields, pts, ["A", "B", "C"])
    assert alg.exact
    assert all(v == 0 for i in range(3) for j in range(3) for v in alg.tensor[i][j])
    assert derived_series(alg) == [3, 0]
    assert is_solvable(alg)


def test_nonconstant_coefficients_rejected():
    # [d/dx, x^2 d/dy] = 2x d/dy is not in the span with constant coeffs
    fields = [_vf(1, 0, 0, 0, 0), _vf(0, X * X, 0, 0, 0)]
    pts = exact_sample_points(model_Pm(3), 3)
    with pytest.raises(NonConstantCoefficientsError):
        structure_constants(fields, pts, ["A", "B"])


def test_power_model_structure_and_grading():
    alg = structure_constants_model(model_Pm(3))
    assert alg.exact
    assert derived_series(alg) == [7, 5, 1, 0]
    i, j = alg.names.index("W1"), alg.names.index("W5")
    coeffs = alg.bracket_coeffs(i, j)
    assert coeffs == tuple(F(int(n == "W3")) for n in alg.names)


def test_ln_model_adjoint_blocks():
    alg = structure_constants_model(model_ln())
    idx = [alg.names.index(n) for n in ("V1", "V2", "V5", "V7")]
    e6 = [F(int(n == "V6")) for n in alg.names]
    M = ratlin.mat(ad_restricted(alg, e6, idx))
    assert ratlin.jordan_blocks(M) == (2, 2)


def test_grading_negative_control():
    alg = structure_constants_model(model_Pm(3))
    degrees = {n: -1 for n in alg.names}
    degrees["W4"] = 0
    degrees["W3"] = -2
    degrees["W6"] = 0
    # wrong degree for W7 breaks the grading
    degrees["W7"] = -5
    grading = [F(int(n == "W4")) for n in alg.names]
    rep = grading_check(alg, grading, degrees)
    assert not rep.ok


def test_extended_rational_equality_and_infinity():
    assert ExtendedRational(F(3, 4)) == F(3, 4)
    inf = invariant_I2_k(3)
    assert inf.infinite and inf.g2
    assert str(inf).startswith("inf")


def test_invariant_values():
    assert invariant_J(2) == F(9, 25)
    assert invariant_J(F(1, 2)) == 0
    rec = invariant_record(2)
    assert rec.k == 3 and rec.consistent and rec.g2


def test_invariant_pole():
    with pytest.raises(FormulaPoleError):
        invariant_I2_q(0, F(1, 4))


def test_i2_cross_family_match():
    k = F(2, 5)
    r1, r2 = F(k * k + 1, 4), F(k * k, 16)
    assert invariant_I2_q(r1, r2) == invariant_I2_k(k)


def test_g2_quadratic_locus():
    v = invariant_I2_q(F(10), F(9, 100) * 100)  # r2 = 9 r1^2 / 100
    assert v.infinite and v.g2


def test_frame_decomposition_of_grading_field():
    from monge235.liealg import frame_decompose
    mo = model_Pm(3)
    frame = [mo.symmetries[n] for n in ("W1", "W2", "W3", "W5")] + [w6prime(mo)]
    coeffs = frame_decompose(mo.symmetries["W4"], frame)
    from monge235.expr import simplify
    from monge235.zerotest import is_zero
    cfg = ZeroTestConfig(samples=8)
    want = (X, Y, 2 * Z - X * Z1, Z1, R(0))
    for c, w in zip(coeffs, want):
        assert is_zero(simplify(c - w), cfg)
