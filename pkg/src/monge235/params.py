"""Group actions on the model parameter spaces.

The Klein four-group G acts on the power-family parameter m (and on
k = 2m - 1); its order-8 dihedral lift acts on the models themselves.
The kappa = b/a coordinate of the quadratic family carries the
+-kappa^{+-1} action with a half-disk fundamental domain.  The
higher-order family is governed by the C_n Weyl group of signed
permutations of the exponents.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


class ExcludedPointError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Dih4 (order 8) and its projection to Z2 x Z2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dih4Element:
    """Element (r, f): rotation by r quarter-turns, then f reflections."""

    r: int
    f: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % 4)
        object.__setattr__(self, "f", self.f % 2)

    def __mul__(self, other: "Dih4Element") -> "Dih4Element":
        sign = -1 if self.f else 1
        return Dih4Element(self.r + sign * other.r, self.f ^ other.f)

    def inverse(self) -> "Dih4Element":
        if self.f:
            return self
        return Dih4Element(-self.r, 0)

    @property
    def name(self) -> str:
        return _DIH4_NAMES[(self.r, self.f)]


DIH4_E = Dih4Element(0, 0)
DIH4_A = Dih4Element(0, 1)
DIH4_B = Dih4Element(1, 1)
DIH4_ZETA = (DIH4_A * DIH4_B) * (DIH4_A * DIH4_B)

_DIH4_NAMES = {
    (0, 0): "e",
    (1, 0): "ba",
    (2, 0): "zeta",
    (3, 0): "ab",
    (0, 1): "a",
    (1, 1): "b",
    (2, 1): "bab",
    (3, 1): "aba",
}
DIH4_ALL = tuple(Dih4Element(r, f) for f in (0, 1) for r in range(4))
DIH4_BY_NAME = {g.name: g for g in DIH4_ALL}


def dih4_mul(g: Dih4Element, h: Dih4Element) -> Dih4Element:
    return g * h


def project_p(g: Dih4Element) -> tuple:
    """Surjection onto Z2 x Z2 with p(a) = (1,0), p(b) = (0,1)."""
    return ((g.r + g.f) % 2, g.r % 2)


@dataclass(frozen=True)
class SubgroupReport:
    kernel: tuple
    z4_subgroup: tuple
    z4_normal: bool
    g1_image: tuple
    g2_image: tuple


def subgroup_report() -> SubgroupReport:
    """The structural facts about the dihedral lift used downstream."""
    kernel = tuple(g.name for g in DIH4_ALL if project_p(g) == (0, 0))
    ab = DIH4_A * DIH4_B
    z4 = []
    g = DIH4_E
    for _ in range(4):
        z4.append(g)
        g = g * ab
    normal = all(
        (h * z) * h.inverse() in z4 for h in DIH4_ALL for z in z4
    )
    g1 = {DIH4_E, DIH4_A, DIH4_ZETA, DIH4_A * DIH4_ZETA}
    g2 = {DIH4_E, DIH4_B, DIH4_ZETA, DIH4_B * DIH4_ZETA}
    return SubgroupReport(
        kernel=kernel,
        z4_subgroup=tuple(g.name for g in z4),
        z4_normal=normal,
        g1_image=tuple(sorted({project_p(g) for g in g1})),
        g2_image=tuple(sorted({project_p(g) for g in g2})),
    )


# ---------------------------------------------------------------------------
# G = Z2 x Z2 on m and on k = 2m - 1
# ---------------------------------------------------------------------------

G_ELEMENTS = ((0, 0), (1, 0), (0, 1), (1, 1))  # e, a, b, ab


def act(g: tuple, m) -> Fraction:
    """Action of (alpha, beta) in Z2 x Z2 on the parameter m."""
    m = Fraction(m)
    alpha, beta = g
    if beta:
        if 2 * m == 1:
            raise ExcludedPointError("excluded point m = 1/2")
        m = m / (2 * m - 1)
    if alpha:
        m = 1 - m
    return m


def act_k(g: tuple, k) -> Fraction:
    """Same action in the k = 2m - 1 coordinate: a(k) = -k, b(k) = 1/k."""
    k = Fraction(k)
    alpha, beta = g
    if beta:
        if k == 0:
            raise ExcludedPointError("excluded point k = 0 (m = 1/2)")
        k = 1 / k
    if alpha:
        k = -k
    return k


@dataclass(frozen=True)
class ParamOrbit:
    elements: tuple
    stabilizer: tuple
    canonical: object

    @property
    def cardinality(self) -> int:
        return len(self.elements)


def orbit_m(m) -> ParamOrbit:
    m = Fraction(m)
    if 2 * m == 1:
        raise ExcludedPointError("excluded point m = 1/2")
    images = {g: act(g, m) for g in G_ELEMENTS}
    elements = tuple(sorted(set(images.values())))
    stab = tuple(g for g, v in images.items() if v == m)
    canonical = canonical_m(m)
    return ParamOrbit(elements, stab, canonical)


def canonical_m(m) -> Fraction:
    """Representative with k = 2m - 1 in [0, 1], i.e. m in [1/2, 1]."""
    m = Fraction(m)
    if 2 * m == 1:
        raise ExcludedPointError("excluded point m = 1/2")
    candidates = {act(g, m) for g in G_ELEMENTS}
    good = [v for v in candidates if 0 <= 2 * v - 1 <= 1]
    return min(good)


def orbit_k(k) -> ParamOrbit:
    k = Fraction(k)
    if k == 0:
        raise ExcludedPointError("excluded point k = 0")
    images = {g: act_k(g, k) for g in G_ELEMENTS}
    elements = tuple(sorted(set(images.values())))
    stab = tuple(g for g, v in images.items() if v == k)
    good = [v for v in images.values() if 0 <= v <= 1]
    return ParamOrbit(elements, stab, min(good))


# ---------------------------------------------------------------------------
# kappa on P^1 with the half-disk fundamental domain
# ---------------------------------------------------------------------------

INF = complex("inf")


def _is_inf(v) -> bool:
    return isinstance(v, complex) and (math.isinf(v.real) or math.isinf(v.imag)) or (
        isinstance(v, float) and math.isinf(v)
    )


def _kappa_key(v):
    if _is_inf(v):
        return (2, 0.0, 0.0)
    v = complex(v)
    return (1, round(v.real, 12), round(v.imag, 12))


def orbit_kappa(kappa) -> ParamOrbit:
    """Orbit {+-kappa, +-1/kappa} on P^1 = C u {inf}."""
    if _is_inf(kappa):
        pts = [INF, complex(0)]
    else:
        k = complex(kappa)
        if k == 0:
            pts = [complex(0), INF]
        else:
            pts = [k, -k, 1 / k, -1 / k]
    seen = {}
    for p in pts:
        seen.setdefault(_kappa_key(p), p)
    elements = tuple(sorted(seen.values(), key=_kappa_key))
    card = len(elements)
    stab_size = 4 // card if card in (1, 2, 4) else 1
    return ParamOrbit(elements, ("size", stab_size), canonical_kappa(kappa))


def canonical_kappa(kappa):
    """Representative in the closed half-disk |k| <= 1, Re(k) >= 0.

    Ties are broken lexicographically by (Re, Im).
    """
    if _is_inf(kappa) or complex(kappa) == 0:
        return complex(0)
    k = complex(kappa)
    cands = [k, -k, 1 / k, -1 / k]
    tol = 1e-12
    inside = [
        v for v in cands if abs(v) <= 1 + tol and v.real >= -tol
    ]
    return min(inside, key=lambda v: (round(v.real, 12), round(v.imag, 12)))


# ---------------------------------------------------------------------------
# C_n roots and coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootData:
    n: int
    roots: tuple
    coeffs: tuple
    multiple_roots: bool = False


def coeffs_from_roots(roots: Sequence) -> tuple:
    """Elementary symmetric functions of the squared exponents:
    prod(t^2 + a_i^2) = t^{2n} + r_1 t^{2n-2} + ... + r_n."""
    sq = [a * a for a in roots]
    n = len(sq)
    # e_k via the Newton-free direct recursion
    e = [1] + [0] * n
    for s in sq:
        for k in range(n, 0, -1):
            e[k] = e[k] + s * e[k - 1]
    return tuple(e[1:])


def roots_from_coeffs(coeffs: Sequence) -> RootData:
    """Exponents from coefficients via the companion polynomial in s = t^2."""
    coeffs = tuple(coeffs)
    n = len(coeffs)
    poly = [1.0 + 0j] + [complex(c) for c in coeffs]
    s_roots = np.roots(poly)
    roots = tuple(cmath.sqrt(-s) for s in s_roots)
    multiple = False
    for i in range(n):
        for j in range(i):
            if abs(s_roots[i] - s_roots[j]) < 1e-9 * max(1.0, abs(s_roots[i])):
                multiple = True
    return RootData(n, roots, tuple(coeffs), multiple)


# ---------------------------------------------------------------------------
# C_n Weyl orbit and the arithmetic stratum
# ---------------------------------------------------------------------------

def _proj_normalize(t: tuple) -> tuple:
    """Pick one of {t, -t} deterministically (projective class mod -1)."""
    neg = tuple(-v for v in t)
    key = lambda u: tuple((round(complex(v).real, 12), round(complex(v).imag, 12)) for v in u)
    return t if key(t) <= key(neg) else neg


def weyl_orbit(roots: Sequence) -> set:
    """Signed permutations of the exponents modulo the global sign."""
    roots = tuple(roots)
    n = len(roots)
    out = set()
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            t = tuple(signs[i] * roots[perm[i]] for i in range(n))
            t = _proj_normalize(t)
            out.add(tuple(complex(v) for v in t))
    return out


class StratumSizeError(ValueError):
    pass


def arithmetic_stratum(roots: Sequence, tol: float = 1e-9) -> bool:
    """True when {+-a_1, ..., +-a_n} can be arranged into an arithmetic
    progression (strictly constant consecutive difference; repeated
    values only pass when all values coincide)."""
    vals = []
    allreal = True
    for a in roots:
        c = complex(a)
        if abs(c.imag) > tol:
            allreal = False
        vals.extend([c, -c])
    if allreal:
        xs = sorted(v.real for v in vals)
        diffs = [xs[i + 1] - xs[i] for i in range(len(xs) - 1)]
        return all(abs(d - diffs[0]) <= tol for d in diffs)
    if len(roots) > 4:
        raise StratumSizeError("complex arithmetic-stratum test capped at n <= 4")
    return _complex_progression(vals, tol)


def _complex_progression(vals: list, tol: float) -> bool:
    n = len(vals)

    def extend(seq, remaining, d):
        if not remaining:
            return True
        target = seq[-1] + d
        for i, v in enumerate(remaining):
            if abs(v - target) <= tol:
                if extend(seq + [v], remaining[:i] + remaining[i + 1:], d):
                    return True
        return False

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            first, second = vals[i], vals[j]
            rest = [v for k, v in enumerate(vals) if k not in (i, j)]
            if extend([first, second], rest, second - first):
                return True
    return False
