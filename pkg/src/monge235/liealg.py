"""Lie-algebra structure extraction and the scalar invariants J and I^2.

Structure constants are obtained by solving [X_i, X_j] = sum c^k_ij X_k
pointwise.  When the fields evaluate to exact rationals at the supplied
points the solve is exact; otherwise a float least-squares solve is
used.  Constancy of the coefficients is verified at extra control
points either way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import ratlin
from .expr import (
    ZERO,
    DomainError,
    EvalContext,
    Expr,
    as_expr,
    evaluate,
    free_symbols,
    simplify,
)
from .jet import VectorField, lie_bracket
from .zerotest import ZeroTestConfig, is_zero


class DependentFieldsError(ArithmeticError):
    pass


class NonConstantCoefficientsError(ArithmeticError):
    """The bracket coefficients vary from point to point: the given
    fields do not close into a finite-dimensional algebra."""


class NonInvariantSubspaceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LieAlgebraData:
    names: tuple
    fields: tuple
    tensor: tuple  # tensor[i][j][k] = c^k_ij
    exact: bool
    max_residual: float

    @property
    def dim(self) -> int:
        return len(self.fields)

    def bracket_coeffs(self, i: int, j: int) -> tuple:
        return self.tensor[i][j]


def _eval_exact(V: VectorField, values: Mapping[str, Fraction]):
    out = []
    for c in V.components:
        v = evaluate(c, EvalContext(values))
        if not isinstance(v, Fraction):
            return None
        out.append(v)
    return out


def _eval_float(V: VectorField, values) -> np.ndarray:
    return V.eval_at(values)


def _field_params(fields) -> list:
    params = set()
    for f in fields:
        for c in f.components:
            params |= {s for s in free_symbols(c) if s.is_param}
    return sorted(params, key=lambda s: s.name)


def structure_constants(
    fields: Sequence[VectorField],
    points: Sequence[Mapping[str, Fraction]],
    names: Sequence[str] | None = None,
    cfg: ZeroTestConfig | None = None,
) -> LieAlgebraData:
    """Extract c^k_ij for the given basis, exactly when possible.

    ``points`` must jointly pin the coefficients (full column rank when
    the field evaluations are stacked).  Constancy of the solved
    coefficients is verified at random float control points.
    """
    fields = tuple(fields)
    n = len(fields)
    names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(n))
    cfg = cfg or ZeroTestConfig()
    if _field_params(fields):
        raise ValueError("structure constants need numeric parameters")

    # exact path: stack exact evaluations of the basis at the points
    exact_rows = []
    for pt in points:
        cols = [_eval_exact(f, pt) for f in fields]
        if any(c is None for c in cols):
            exact_rows = None
            break
        exact_rows.extend([[cols[k][r] for k in range(n)] for r in range(len(cols[0]))])
    exact = exact_rows is not None and ratlin.rank(exact_rows) == n

    brackets = {(i, j): lie_bracket(fields[i], fields[j]) for i in range(n) for j in range(i)}

    if exact:
        tensor = _solve_exact(fields, brackets, points, exact_rows, n)
    else:
        tensor = _solve_float(fields, brackets, points, n, cfg)

    resid = _control_residual(fields, brackets, tensor, n, cfg)
    if resid > 1e-7:
        raise NonConstantCoefficientsError(
            f"bracket coefficients vary across control points (residual {resid:.3g})"
        )
    return LieAlgebraData(names, fields, tensor, exact, resid)


def _solve_exact(fields, brackets, points, rows, n):
    tensor = [[None] * n for _ in range(n)]
    zero = tuple(Fraction(0) for _ in range(n))
    for i in range(n):
        tensor[i][i] = zero
    for (i, j), B in brackets.items():
        rhs = []
        for pt in points:
            bv = _eval_exact(B, pt)
            if bv is None:
                raise DependentFieldsError("bracket not exactly evaluable")
            rhs.extend(bv)
        try:
            c = ratlin.solve(rows, rhs)
        except ratlin.SingularSystemError as exc:
            raise NonConstantCoefficientsError(str(exc)) from exc
        tensor[i][j] = tuple(c)
        tensor[j][i] = tuple(-v for v in c)
    return tuple(tuple(row) for row in tensor)


def _solve_float(fields, brackets, points, n, cfg):
    rng = random.Random(cfg.seed + 1)
    chart = fields[0].chart
    pts = [cfg.sample_point(chart, rng) for _ in range(max(3, len(points)))]
    A = np.vstack([np.array([f.eval_at(pt) for f in fields]).T for pt in pts])
    if np.linalg.matrix_rank(A) < n:
        raise DependentFieldsError("fields dependent at sampled points")
    tensor = [[None] * n for _ in range(n)]
    zero = tuple(0.0 for _ in range(n))
    for i in range(n):
        tensor[i][i] = zero
    for (i, j), B in brackets.items():
        b = np.concatenate([B.eval_at(pt) for pt in pts])
        c, *_ = np.linalg.lstsq(A, b, rcond=None)
        c = tuple(v.real if abs(v.imag) < 1e-12 else complex(v) for v in c)
        tensor[i][j] = c
        tensor[j][i] = tuple(-v for v in c)
    return tuple(tuple(row) for row in tensor)


def _control_residual(fields, brackets, tensor, n, cfg) -> float:
    rng = random.Random(cfg.seed + 2)
    chart = fields[0].chart
    worst = 0.0
    for _ in range(3):
        pt = cfg.sample_point(chart, rng)
        try:
            basis = np.array([f.eval_at(pt) for f in fields])
        except DomainError:
            continue
        scale = max(1.0, float(np.max(np.abs(basis))))
        for (i, j), B in brackets.items():
            coeffs = np.array([complex(c) for c in tensor[i][j]])
            recon = coeffs @ basis
            resid = float(np.max(np.abs(B.eval_at(pt) - recon))) / scale
            worst = max(worst, resid)
    return worst


def structure_constants_model(model, cfg: ZeroTestConfig | None = None) -> LieAlgebraData:
    """Structure constants of a catalog model's listed basis."""
    from .catalog import exact_sample_points

    names = tuple(model.symmetries.keys())
    fields = tuple(model.symmetries.values())
    return structure_constants(fields, exact_sample_points(model), names, cfg)


# ---------------------------------------------------------------------------
# abstract-algebra layer (everything below works on the tensor)
# ---------------------------------------------------------------------------

def _tensor_bracket(alg: LieAlgebraData, u: Sequence, v: Sequence) -> list:
    n = alg.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            if v[j] == 0:
                continue
            c = alg.tensor[i][j]
            for k in range(n):
                if c[k] != 0:
                    out[k] += u[i] * v[j] * c[k]
    return out


def _span_dim(vectors: list, n: int) -> tuple:
    if not vectors:
        return 0, []
    R, pivots = ratlin.rref([list(v) for v in vectors])
    basis = [R[r] for r in range(len(pivots))]
    return len(pivots), basis


def derived_series(alg: LieAlgebraData) -> list:
    """Dimensions of g, g', g'', ... down to stabilization."""
    n = alg.dim
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    dims = [n]
    while True:
        brackets = [
            _tensor_bracket(alg, basis[i], basis[j])
            for i in range(len(basis))
            for j in range(i)
        ]
        d, basis = _span_dim(brackets, n)
        dims.append(d)
        if d == 0 or d == dims[-2]:
            return dims


def is_solvable(alg: LieAlgebraData) -> bool:
    return derived_series(alg)[-1] == 0


def ad_matrix(alg: LieAlgebraData, element: Sequence) -> list:
    """Matrix of ad(x) in the full basis; column j holds [x, e_j]."""
    n = alg.dim
    cols = []
    for j in range(n):
        ej = [Fraction(int(i == j)) for i in range(n)]
        cols.append(_tensor_bracket(alg, list(element), ej))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def ad_restricted(alg: LieAlgebraData, element: Sequence, subspace: Sequence[int]) -> list:
    """ad(x) restricted to the span of the given basis indices.

    Errors when the subspace is not invariant under ad(x).
    """
    full = ad_matrix(alg, element)
    sub = set(subspace)
    for j in subspace:
        for i in range(alg.dim):
            if i not in sub and full[i][j] != 0:
                raise NonInvariantSubspaceError(
                    f"ad maps basis element {alg.names[j]} outside the subspace "
                    f"(component along {alg.names[i]})"
                )
    return [[full[i][j] for j in subspace] for i in subspace]


def coeff_vector(alg: LieAlgebraData, combo: Mapping[str, Fraction]) -> list:
    """Coefficient vector from a {basis name: coefficient} mapping."""
    idx = {nm: i for i, nm in enumerate(alg.names)}
    out = [Fraction(0)] * alg.dim
    for nm, c in combo.items():
        out[idx[nm]] = Fraction(c)
    return out


@dataclass(frozen=True)
class GradingReport:
    ok: bool
    failures: tuple


def grading_check(alg: LieAlgebraData, grading: Sequence, degrees: Mapping[str, int]) -> GradingReport:
    """Verify ad(grading) = k*id on each degree-k piece and the
    Heisenberg condition [h_{-1}, h_{-1}] subset h_{-2}."""
    idx = {nm: i for i, nm in enumerate(alg.names)}
    failures = []
    A = ad_matrix(alg, grading)
    for nm, k in degrees.items():
        j = idx[nm]
        for i in range(alg.dim):
            want = Fraction(k) if i == j else Fraction(0)
            if A[i][j] != want:
                failures.append(
                    f"ad(grading){alg.names[j]} has {A[i][j]} along {alg.names[i]}, want {want}"
                )
    h1 = [nm for nm, k in degrees.items() if k == -1]
    h2 = {idx[nm] for nm, k in degrees.items() if k == -2}
    for a_i, na in enumerate(h1):
        for nb in h1[:a_i]:
            br = _tensor_bracket(
                alg,
                coeff_vector(alg, {na: Fraction(1)}),
                coeff_vector(alg, {nb: Fraction(1)}),
            )
            for i, v in enumerate(br):
                if v != 0 and i not in h2:
                    failures.append(f"[{na},{nb}] leaves h_-2 (component {alg.names[i]})")
    return GradingReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# symbolic frame decomposition
# ---------------------------------------------------------------------------

class SingularFrameError(ArithmeticError):
    pass


def frame_decompose(
    field: VectorField, frame: Sequence[VectorField], cfg: ZeroTestConfig | None = None
) -> list:
    """Coefficients g_i with field = sum g_i * frame_i, as Exprs.

    Solves the linear system by symbolic Gaussian elimination; the
    result is verified by the randomized zero test.
    """
    cfg = cfg or ZeroTestConfig()
    n = len(field.components)
    if len(frame) != n:
        raise ValueError("frame size must match chart dimension")
    # rows: equations (one per chart component); columns: frame coefficients
    A = [[simplify(frame[j].components[i]) for j in range(n)] for i in range(n)]
    b = [simplify(c) for c in field.components]
    perm = list(range(n))
    for col in range(n):
        pivot = None
        # prefer constant pivots to keep intermediate expressions small
        for r in range(col, n):
            e = A[r][col]
            if e != ZERO and not free_symbols(e):
                pivot = r
                break
        if pivot is None:
            for r in range(col, n):
                if not is_zero(A[r][col], cfg):
                    pivot = r
                    break
        if pivot is None:
            raise SingularFrameError(f"no usable pivot in column {col}")
        A[col], A[pivot] = A[pivot], A[col]
        b[col], b[pivot] = b[pivot], b[col]
        inv = simplify(as_expr(1) / A[col][col])
        A[col] = [simplify(e * inv) for e in A[col]]
        b[col] = simplify(b[col] * inv)
        for r in range(n):
            if r != col and A[r][col] != ZERO:
                f = A[r][col]
                A[r] = [simplify(e - f * g) for e, g in zip(A[r], A[col])]
                b[r] = simplify(b[r] - f * b[col])
    coeffs = b
    # verify the reconstruction
    for i in range(n):
        recon = ZERO
        for j in range(n):
            recon = recon + coeffs[j] * frame[j].components[i]
        if not is_zero(simplify(recon - field.components[i]), cfg):
            raise SingularFrameError("decomposition failed verification")
    return coeffs


# ---------------------------------------------------------------------------
# numerical invariants
# ---------------------------------------------------------------------------

class FormulaPoleError(ArithmeticError):
    """The printed invariant formula has a pole at these parameters."""


@dataclass(frozen=True)
class ExtendedRational:
    """A rational value or a tagged infinity (the exceptional locus)."""

    value: Fraction | None
    infinite: bool = False
    g2: bool = False

    def __post_init__(self):
        if not self.infinite and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    def __eq__(self, other):
        if isinstance(other, ExtendedRational):
            if self.infinite or other.infinite:
                return self.infinite == other.infinite
            return self.value == other.value
        if self.infinite:
            return False
        return self.value == other

    def __hash__(self):
        return hash((self.infinite, self.value))

    def __str__(self):
        if self.infinite:
            return "inf (G2)" if self.g2 else "inf"
        return str(self.value)


INF_G2 = ExtendedRational(None, infinite=True, g2=True)

_G2_K = {Fraction(3), Fraction(-3), Fraction(1, 3), Fraction(-1, 3)}


def invariant_J(m) -> Fraction:
    m = Fraction(m)
    return Fraction((1 - 2 * m) ** 2, (1 - 2 * m + 2 * m * m) ** 2)


def invariant_I2_k(k) -> ExtendedRational:
    k = Fraction(k)
    if k in _G2_K:
        return INF_G2
    den = (k * k - 9) * (Fraction(1, 9) - k * k)
    return ExtendedRational(Fraction((k * k + 1) ** 2, den))


def invariant_I2_q(r1, r2) -> ExtendedRational:
    r1, r2 = Fraction(r1), Fraction(r2)
    if r1 == 0:
        raise FormulaPoleError("r1 = 0: the I^2(r1, r2) formula has a pole")
    if 100 * r2 == 9 * r1 * r1:
        return INF_G2
    return ExtendedRational(1 / (Fraction(100) * r2 / (9 * r1 * r1) - 1))


@dataclass(frozen=True)
class InvariantRecord:
    m: Fraction | None
    k: Fraction | None
    J: Fraction
    I2: ExtendedRational
    consistent: bool
    g2: bool


def invariant_record(m) -> InvariantRecord:
    """J, k and I^2 for the power family, with the 25J = 9(1 + 1/I^2)
    consistency relation checked exactly."""
    m = Fraction(m)
    k = 2 * m - 1
    J = invariant_J(m)
    I2 = invariant_I2_k(k)
    if I2.infinite:
        consistent = 25 * J == 9
    elif I2.value == 0:
        consistent = False
    else:
        consistent = 25 * J == 9 * (1 + 1 / I2.value)
    return InvariantRecord(m, k, J, I2, consistent, I2.g2)
