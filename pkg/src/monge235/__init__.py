"""Submaximal symmetric rank-2 Monge distributions in 5D.

A small computer-algebra core (``expr``, ``parser``), jet-space
differential geometry (``jet``), the model catalog (``catalog``),
point transformations between the models (``maps``), Lie-algebra
structure extraction and invariants (``liealg``, ``ratlin``),
parameter-space group actions (``params``), and the verification
suites behind the ``monge235`` command line tool (``suites``,
``cli``).
"""

from .catalog import (
    MongeModel,
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
from .expr import (
    Add,
    DomainError,
    EvalContext,
    Exp,
    Expr,
    Ln,
    Mul,
    Pow,
    R,
    Rat,
    Sym,
    diff,
    evaluate,
    free_symbols,
    param,
    simplify,
    subst,
    var,
)
from .jet import (
    ChartMismatchError,
    Distribution,
    RankInstabilityError,
    VectorField,
    annihilator_forms,
    growth_vector,
    is_symmetry,
    lie_bracket,
    monge_distribution,
    total_derivative,
)
from .liealg import (
    ExtendedRational,
    FormulaPoleError,
    LieAlgebraData,
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
from .maps import (
    FiberMismatchError,
    InvalidParameterError,
    PointMap,
    ProlongationError,
    builtin,
    builtin_names,
    check_equivalence,
    compose,
    dihedral_suite,
    identity_map,
    prolong,
)
from .params import (
    DIH4_ALL,
    Dih4Element,
    ExcludedPointError,
    arithmetic_stratum,
    canonical_kappa,
    canonical_m,
    coeffs_from_roots,
    orbit_k,
    orbit_kappa,
    orbit_m,
    roots_from_coeffs,
    weyl_orbit,
)
from .parser import ParseError, parse, to_str
from .suites import CheckReport, list_checks, reports_to_json, run_suite
from .zerotest import ZeroTestConfig, is_zero

__version__ = "0.1.0"
