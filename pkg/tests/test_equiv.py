from fractions import Fraction

import pytest

from monge235.catalog import model_Pm
from monge235.expr import Exp, R, Sym, var
from monge235.jet import jet_chart
from monge235.maps import (
    FiberMismatchError,
    InvalidParameterError,
    ProlongationError,
    builtin,
    builtin_names,
    check_equivalence,
    compose,
    dihedral_suite,
    identity_map,
    map_Ta,
    map_Tb,
    map_Tzeta,
    maps_equal,
    prolong,
)
from monge235.zerotest import ZeroTestConfig

F = Fraction
X, Y, Z, Z1, Z2 = jet_chart(2)
CFG = ZeroTestConfig(samples=16)


def test_ta_apply_example():
    assert tuple(map_Ta(2).apply([F(1), F(2), F(3), F(4), F(5)])) == \
        (F(4), F(2), F(1), F(1), F(1, 5))


def test_ta_is_an_equivalence():
    T = map_Ta(3)
    rep = check_equivalence(T, model_Pm(3), model_Pm(-2), CFG)
    assert rep.ok


def test_tb_defined_at_m_equal_one():
    img = tuple(map_Tb(1).apply([F(1), F(2), F(3), F(4), F(5)]))
    assert img == (F(1), F(4), F(1), F(2), F(5))


def test_excluded_parameters_raise():
    with pytest.raises(InvalidParameterError):
        map_Ta(0)
    with pytest.raises(InvalidParameterError):
        map_Tb(F(1, 2))
    with pytest.raises(InvalidParameterError):
        map_Tzeta(1)


def test_compose_order_and_fibers():
    # compose(f, g) applies g first; fibers must match.
    ta = map_Ta(2)           # Pm(2) -> Pm(-1)
    ta_back = map_Ta(-1)     # Pm(-1) -> Pm(2)
    rt = compose(ta_back, ta)
    rep = maps_equal(rt, identity_map(("Pm", F(2))), CFG)
    assert rep.ok
    with pytest.raises(FiberMismatchError):
        compose(ta, ta)  # target fiber Pm(-1) does not feed Pm(2)


def test_zeta_is_not_the_identity():
    rep = maps_equal(map_Tzeta(3), identity_map(("Pm", F(3))), CFG)
    assert not rep.ok
    assert rep.max_residual > 0.1


def test_builtin_registry():
    names = builtin_names()
    for name in ("Ta", "Tb", "TbPrinted", "Tzeta", "Psi", "PsiBar",
                 "Phi", "Upsilon", "Tcomp", "TcompPrinted"):
        assert name in names
    with pytest.raises(InvalidParameterError):
        builtin("NoSuchMap")


def test_prolong_identity():
    from monge235.expr import simplify
    from monge235.zerotest import is_zero
    res = prolong(X, Z, Y, model_Pm(3).rhs, 2, CFG)
    for got, want in zip(res.pmap.components, (X, Y, Z, Z1, Z2)):
        assert is_zero(simplify(got - want), CFG)
    assert is_zero(simplify(res.rhs - model_Pm(3).rhs), CFG)


def test_prolong_rejects_non_contact_triple():
    # zbar depending on z2 breaks cancellation of the spare jet symbol
    with pytest.raises(ProlongationError) as exc:
        prolong(X, Z2, Y, model_Pm(3).rhs, 2, CFG)
    assert "z3" in str(exc.value)


def test_dihedral_suite_small():
    rep = dihedral_suite([F(2), F(3, 4)], CFG)
    assert rep.ok, rep.failures
    assert rep.max_residual < 1e-9
