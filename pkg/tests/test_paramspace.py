from fractions import Fraction

import pytest

from monge235.params import (
    DIH4_A,
    DIH4_ALL,
    DIH4_B,
    DIH4_BY_NAME,
    DIH4_E,
    DIH4_ZETA,
    ExcludedPointError,
    G_ELEMENTS,
    StratumSizeError,
    act,
    act_k,
    arithmetic_stratum,
    canonical_kappa,
    canonical_m,
    coeffs_from_roots,
    orbit_k,
    orbit_kappa,
    orbit_m,
    project_p,
    roots_from_coeffs,
    subgroup_report,
    weyl_orbit,
)

F = Fraction


def test_dih4_group_axioms():
    for g in DIH4_ALL:
        assert g * DIH4_E == g and DIH4_E * g == g
        assert g * g.inverse() == DIH4_E
    # associativity on the full multiplication table
    for g in DIH4_ALL:
        for h in DIH4_ALL:
            for k in DIH4_ALL:
                assert (g * h) * k == g * (h * k)


def test_dih4_defining_relations():
    assert DIH4_A * DIH4_A == DIH4_E
    assert DIH4_B * DIH4_B == DIH4_E
    ab = DIH4_A * DIH4_B
    assert ab * ab == DIH4_ZETA
    assert DIH4_ZETA * DIH4_ZETA == DIH4_E
    assert DIH4_A * DIH4_B == (DIH4_B * DIH4_A) * DIH4_ZETA


def test_projection_is_a_homomorphism():
    for g in DIH4_ALL:
        for h in DIH4_ALL:
            pg, ph = project_p(g), project_p(h)
            prod = ((pg[0] + ph[0]) % 2, (pg[1] + ph[1]) % 2)
            assert project_p(g * h) == prod
    rep = subgroup_report()
    assert rep.kernel == ("e", "zeta")
    assert rep.z4_normal and len(rep.z4_subgroup) == 4


def test_parameter_action_is_a_group_action():
    m = F(7, 3)
    for g in G_ELEMENTS:
        for h in G_ELEMENTS:
            gh = ((g[0] + h[0]) % 2, (g[1] + h[1]) % 2)
            assert act(g, act(h, m)) == act(gh, m)
    assert act_k((1, 0), F(3)) == -3
    assert act_k((0, 1), F(3)) == F(1, 3)


def test_orbit_of_two():
    orb = orbit_m(2)
    assert orb.elements == (F(-1), F(1, 3), F(2, 3), F(2))
    assert orb.cardinality == 4
    assert canonical_m(2) == F(2, 3)
    assert orbit_k(3).elements == (F(-3), F(-1, 3), F(1, 3), F(3))


def test_excluded_point_raises():
    with pytest.raises(ExcludedPointError):
        orbit_m(F(1, 2))
    with pytest.raises(ExcludedPointError):
        act((0, 1), F(1, 2))
    with pytest.raises(ExcludedPointError):
        orbit_k(0)


def test_kappa_orbits_and_canonical_domain():
    assert orbit_kappa(0).cardinality == 2    # {0, inf}
    assert orbit_kappa(1).cardinality == 2    # {1, -1}
    assert orbit_kappa(2).cardinality == 4
    assert canonical_kappa(2) == 0.5
    c = canonical_kappa(0.4 + 0.3j)
    assert abs(c) <= 1 + 1e-12 and c.real >= -1e-12


def test_root_coefficient_roundtrip():
    assert coeffs_from_roots((1, 3)) == (10, 9)
    assert coeffs_from_roots((1, 3, 5)) == (35, 259, 225)
    data = roots_from_coeffs((10, 9))
    got = sorted(abs(r) for r in data.roots)
    assert abs(got[0] - 1) < 1e-9 and abs(got[1] - 3) < 1e-9


def test_weyl_orbit_sizes():
    assert len(weyl_orbit((1, 3))) == 4       # 2^(n-1) n! with n = 2
    assert len(weyl_orbit((1, 2, 5))) == 24   # n = 3
    assert len(weyl_orbit((1, 1))) < 4        # repeated exponent degenerates


def test_arithmetic_stratum():
    assert arithmetic_stratum((1, 3)) is True
    assert arithmetic_stratum((1, 2)) is False
    assert arithmetic_stratum((1, 3, 5)) is True
    # Weyl invariance
    assert all(arithmetic_stratum(t) for t in weyl_orbit((1, 3)))
    assert not any(arithmetic_stratum(t) for t in weyl_orbit((1, 2)))
    # complex progression along a line
    assert arithmetic_stratum((1 + 1j, 3 + 3j)) is True


def test_stratum_size_cap():
    with pytest.raises(StratumSizeError):
        arithmetic_stratum(tuple(complex(k, 1) for k in range(1, 6)))
