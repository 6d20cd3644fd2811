"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction.  Provides reduced row echelon
form, rank, linear solves, the characteristic polynomial (via the
Faddeev-LeVerrier recursion), rational eigenvalues and Jordan block
partitions from the rank sequence of (A - lambda*I)^k.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def mat(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            a = A[i][t]
            if a == 0:
                continue
            for j in range(m):
                out[i][j] += a * B[t][j]
    return out


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * v for v in row] for row in A]


def rref(A: Matrix) -> tuple:
    """Reduced row echelon form; returns (R, pivot column list)."""
    R = [row[:] for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = 1 / R[r][c]
        R[r] = [v * inv for v in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [v - f * w for v, w in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A: Matrix) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


class SingularSystemError(ArithmeticError):
    pass


def solve(A: Matrix, b: Sequence) -> list:
    """Unique exact solution of A x = b (least-structure: requires
    consistency and full column rank)."""
    rows, cols = len(A), len(A[0])
    aug = [list(A[i]) + [Fraction(b[i])] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        raise SingularSystemError("inconsistent system")
    if len(pivots) < cols:
        raise SingularSystemError("underdetermined system")
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = R[r][cols]
    return x


def charpoly(A: Matrix) -> list:
    """Coefficients [1, c1, ..., cn] of det(tI - A), Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [Fraction(1)]
    M = identity(n)
    for k in range(1, n + 1):
        AM = mat_mul(A, M)
        c = -Fraction(sum(AM[i][i] for i in range(n)), k)
        coeffs.append(c)
        M = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def rational_roots(coeffs: Sequence) -> list:
    """All rational roots (with multiplicity) of a rational polynomial."""
    coeffs = [Fraction(c) for c in coeffs]
    roots = []
    while len(coeffs) > 1:
        # strip trailing zeros: root 0
        if coeffs[-1] == 0:
            roots.append(Fraction(0))
            coeffs = coeffs[:-1]
            continue
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in coeffs]
        lead, tail = ints[0], ints[-1]
        found = None
        for p in _divisors(abs(tail)):
            for q in _divisors(abs(lead)):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(coeffs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        coeffs = _deflate(coeffs, found)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs, root: Fraction) -> list:
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return out


class IrrationalSpectrumError(ArithmeticError):
    """The characteristic polynomial has non-rational roots."""


def eigen_rational(A: Matrix) -> dict:
    """Rational eigenvalues with algebraic multiplicities; errors if the
    spectrum is not entirely rational."""
    cp = charpoly(A)
    roots = rational_roots(cp)
    if len(roots) != len(A):
        raise IrrationalSpectrumError(
            f"only {len(roots)} of {len(A)} eigenvalues are rational"
        )
    out: dict = {}
    for r in roots:
        out[r] = out.get(r, 0) + 1
    return out


def jordan_partition(A: Matrix) -> dict:
    """Jordan block sizes per eigenvalue, {eigenvalue: sorted block sizes}.

    Block counts come from the exact rank sequence of (A - lambda I)^k.
    """
    n = len(A)
    out = {}
    for lam, mult in eigen_rational(A).items():
        B = mat_sub(A, mat_scale(identity(n), lam))
        ranks = [n]
        P = identity(n)
        for _ in range(mult):
            P = mat_mul(P, B)
            ranks.append(rank(P))
            if ranks[-1] == ranks[-2]:
                break
        # number of blocks of size >= k is rank(B^{k-1}) - rank(B^k)
        while len(ranks) < mult + 2:
            ranks.append(ranks[-1])
        sizes = []
        for k in range(1, mult + 1):
            geq_k = ranks[k - 1] - ranks[k]
            geq_k1 = ranks[k] - ranks[k + 1] if k + 1 < len(ranks) else 0
            sizes.extend([k] * (geq_k - geq_k1))
        out[lam] = sorted(sizes)
    return out


def jordan_blocks(A: Matrix) -> tuple:
    """All Jordan block sizes of A, sorted ascending."""
    sizes: list = []
    for s in jordan_partition(A).values():
        sizes.extend(s)
    return tuple(sorted(sizes))
