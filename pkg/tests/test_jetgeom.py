from fractions import Fraction

import pytest

from monge235.catalog import model_higher, model_Pm
from monge235.expr import Pow, R, var
from monge235.jet import (
    ChartMismatchError,
    VectorField,
    coordinate_field,
    growth_vector,
    is_symmetry,
    jet_chart,
    lie_bracket,
    monge_distribution,
    spare_symbol,
    total_derivative,
)
from monge235.zerotest import ZeroTestConfig, is_zero

CHART5 = jet_chart(2)
X, Y, Z, Z1, Z2 = CHART5
F = Fraction


def _vf(*comps):
    return VectorField(CHART5, tuple(comps))


def test_bracket_of_coordinate_fields_vanishes():
    dx = coordinate_field(CHART5, X)
    dy = coordinate_field(CHART5, Y)
    b = lie_bracket(dx, dy)
    assert all(c == R(0) for c in b.components)


def test_bracket_antisymmetry_and_jacobi():
    cfg = ZeroTestConfig(samples=8)
    A = _vf(Y, X * Z, R(0), Z2, R(1))
    B = _vf(R(1), Z1, X, R(0), Y)
    C = _vf(Z, R(0), R(1), X * Y, R(0))
    anti = lie_bracket(A, B) + lie_bracket(B, A)
    assert all(is_zero(c, cfg) for c in anti.components)
    jac = (lie_bracket(lie_bracket(A, B), C)
           + lie_bracket(lie_bracket(B, C), A)
           + lie_bracket(lie_bracket(C, A), B))
    assert all(is_zero(c, cfg) for c in jac.components)


def test_total_derivative_on_jet_coordinates():
    f = Pow(Z2, R(2))
    D = total_derivative(f, 2)
    assert D(Y) == f
    assert D(Z) == Z1
    assert D(Z1) == Z2
    assert D(Z2) == spare_symbol(2)


def test_growth_vector_235():
    D = model_Pm(3).distribution()
    assert growth_vector(D, [F(1), F(2), F(1), F(1), F(2)]) == [2, 3, 5]


def test_growth_vector_2356_and_2344():
    higher = model_higher(3, (0, 0, 0))  # y' = (z''')^2
    gv = growth_vector(higher.distribution(), [F(1), F(2), F(1), F(1), F(2), F(3)])
    assert gv == [2, 3, 5, 6]
    linear = monge_distribution(Z2, 2)  # y' = z'' stalls at rank 4
    assert growth_vector(linear, [F(1), F(2), F(1), F(1), F(2)]) == [2, 3, 4, 4]


def test_is_symmetry_positive_and_negative():
    cfg = ZeroTestConfig(samples=16)
    mo = model_Pm(3)
    D = mo.distribution()
    ok, _ = is_symmetry(mo.symmetries["W1"], D, cfg)
    assert ok
    bad = _vf(Y, R(0), R(0), R(0), R(0))  # y d/dx does not preserve the span
    ok, resid = is_symmetry(bad, D, cfg)
    assert not ok
    assert resid > 1e-3


def test_chart_mismatch_raises():
    short = jet_chart(3)
    with pytest.raises(ChartMismatchError):
        lie_bracket(_vf(R(1), R(0), R(0), R(0), R(0)),
                    VectorField(short, tuple(R(0) for _ in short)))
