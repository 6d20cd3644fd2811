import json
from fractions import Fraction

import pytest

from monge235.catalog import (
    SingularParameterError,
    load_model_json,
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
from monge235.expr import R, simplify
from monge235.jet import growth_vector, is_symmetry
from monge235.zerotest import ZeroTestConfig, is_zero

F = Fraction


@pytest.mark.parametrize("m", [0, 1])
def test_power_family_rejects_linear_parameters(m):
    with pytest.raises(SingularParameterError):
        model_Pm(m)


def test_power_family_half_uses_log_antiderivative():
    mo = model_Pm(F(1, 2))
    assert len(mo.symmetries) == 7
    cfg = ZeroTestConfig(samples=8)
    D = mo.distribution()
    for V in mo.symmetries.values():
        ok, _ = is_symmetry(V, D, cfg)
        assert ok


@pytest.mark.parametrize("a,b,msg", [
    (0, 1, "a*b"), (2, 0, "a*b"), (3, 3, "a=+-b"), (2, -2, "a=+-b"),
    (3, 1, "exceptional"), (1, 3, "exceptional"), (9, 3, "exceptional"),
])
def test_quadratic_family_singular_strata(a, b, msg):
    with pytest.raises(SingularParameterError) as exc:
        model_Qab(a, b)
    assert msg in str(exc.value)


def test_qnm_matches_q_coefficients():
    for m in (F(2), F(3), F(-1, 4)):
        a, b = F(1, 2), m - F(1, 2)
        assert model_Qnm(m).rhs == model_Q(a * a + b * b, (a * b) ** 2).rhs


def test_higher_family_needs_matching_coefficients():
    with pytest.raises(ValueError):
        model_higher(3, (1,))
    with pytest.raises(ValueError):
        model_higher(1, (1,))


def test_all_5d_models_have_seven_symmetries_except_q():
    for mo in (model_Pm(3), model_Qab(2, 1), model_N12(), model_ln(),
               model_NS(), model_exp()):
        assert len(mo.symmetries) == 7
    assert model_Q(5, 4).symmetries == {}


def test_load_model_json_roundtrip(tmp_path):
    payload = {
        "name": "demo",
        "n": 2,
        "rhs": "z2^2",
        "params": {},
        "symmetries": {"T": ["1", "0", "0", "0", "0"]},
    }
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(payload))
    mo = load_model_json(str(path))
    assert mo.order == 2
    assert is_zero(mo.rhs - simplify(mo.rhs), ZeroTestConfig(samples=4))
    cfg = ZeroTestConfig(samples=8)
    ok, _ = is_symmetry(mo.symmetries["T"], mo.distribution(), cfg)
    assert ok
    assert growth_vector(mo.distribution(), [F(1), F(2), F(1), F(1), F(2)]) == [2, 3, 5]


def test_load_model_json_bad_arity(tmp_path):
    payload = {"name": "bad", "n": 2, "rhs": "z2^2",
               "symmetries": {"T": ["1", "0"]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        load_model_json(str(path))
