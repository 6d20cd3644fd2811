"""Acceptance criteria.

Each criterion runs once, prints a single PASS/FAIL line, and asserts.
The whole file shares one run of the full verification suite at 32
samples with relative tolerance 1e-9 (looser bounds are noted inline
where a criterion states one).
"""

from fractions import Fraction

import pytest

from monge235.suites import run_suite
from monge235.zerotest import ZeroTestConfig

F = Fraction


@pytest.fixture(scope="module")
def reports():
    cfg = ZeroTestConfig(samples=32, tol=1e-9, seed=0)
    return {r.check_id: r for r in run_suite("all", cfg)}


def _criterion(reports, number, title, check_ids):
    missing = [cid for cid in check_ids if cid not in reports]
    assert not missing, f"criterion {number}: unknown check ids {missing}"
    bad = [cid for cid in check_ids if not reports[cid].ok]
    status = "FAIL" if bad else "PASS"
    print(f"{status} criterion {number}: {title}")
    assert not bad, f"criterion {number} failed: {bad}"


def test_criterion_01_symmetry_suite(reports):
    """Every listed generator is a symmetry; each 7-field basis has rank 7."""
    ids = [cid for cid in reports if cid.startswith("sym.fields.")]
    assert len(ids) == 13
    _criterion(reports, 1, "symmetry suite (13 models, 32 points, rank 7)", ids)


def test_criterion_02_structure_suite(reports):
    """Structure constants match the printed tables exactly; grading and
    derived series (7,5,1,0) hold for both solvable algebras."""
    _criterion(reports, 2, "structure constants, grading, derived series",
               ["structure.power.brackets", "structure.ln.brackets",
                "structure.frame.decomposition"])


def test_criterion_03_jordan_suite(reports):
    """Adjoint Jordan blocks (1,1,1,1) at m=3, (1,1,2) at m=1/2, (2,2) for
    the log model -- exact rational arithmetic, no tolerance."""
    _criterion(reports, 3, "exact Jordan block structure",
               ["jordan.power", "jordan.ln"])


def test_criterion_04_ta_tb_equivalences(reports):
    """Ta: m -> 1-m and Tb: m -> m/(2m-1) are equivalences at
    m in {2, 3, 3/4, 5}, 32 points each."""
    ids = [cid for cid in reports
           if cid.startswith(("maps.Ta.", "maps.Tb.", "maps.TbPrinted."))]
    assert len(ids) == 12
    _criterion(reports, 4, "a- and b-move equivalences", ids)


def test_criterion_05_dihedral_group(reports):
    """Order-8 relations of the a/b moves, zeta nontrivial, zeta matches
    the printed formula, and orbit{2} = {2, -1, 2/3, 1/3}."""
    _criterion(reports, 5, "dihedral group of model equivalences",
               ["dihedral.relations", "dihedral.parameter-orbit"])


def test_criterion_06_cross_family_maps(reports):
    """Psi (m in {2,3,5}), PsiBar, Phi, Upsilon pass equivalence checks;
    the inverted Upsilon composed with PsiBar matches the corrected
    composite to 1e-6 (looser: numeric inversion)."""
    ids = ["maps.Psi.m=2", "maps.Psi.m=3", "maps.Psi.m=5", "maps.PsiBar",
           "maps.Phi", "maps.Upsilon", "maps.Tcomp",
           "maps.Tcomp.inverse-composition",
           "maps.Tcomp.printed-is-forward-composition"]
    _criterion(reports, 6, "cross-family equivalences and the composite", ids)


def test_criterion_07_prolongation_method(reports):
    """prolong applied to the base components of Ta, Tb, Psi, Phi, Upsilon
    reproduces their jet components with certified cancellation."""
    _criterion(reports, 7, "prolongation reproduces the jet components",
               ["maps.prolongation"])


def test_criterion_08_invariant_suite(reports):
    """J is G-invariant for 100 random rational m; J = 4k^2/(k^2+1)^2;
    cross-family I^2 agreement; 25J = 9(1 + 1/I^2); G2 loci flagged."""
    _criterion(reports, 8, "invariants J and I^2 with G2 loci",
               ["invariants.J-invariance", "invariants.cross-family",
                "invariants.G2-loci"])


def test_criterion_09_growth_vectors(reports):
    """(2,3,5) for all 5D catalog models at 10 generic points; (2,3,5,6)
    for the third-order square; (2,3,4,4) for the linear control."""
    ids = [cid for cid in reports if cid.startswith("sym.growth.")]
    ids.append("higher.growth")
    assert len(ids) == 14
    _criterion(reports, 9, "growth vectors across the catalog", ids)


def test_criterion_10_weyl_suite(reports):
    """Root/coefficient round trips (100 random complex, 1e-9); Weyl orbit
    sizes 2^(n-1) n!; arithmetic-stratum classification and its
    Weyl-invariance; kappa orbit cardinalities."""
    _criterion(reports, 10, "signed-permutation orbits and strata",
               ["weyl.roundtrip", "weyl.orbits-and-strata",
                "higher.coefficients"])
