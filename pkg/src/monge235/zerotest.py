"""Randomized identity oracle.

An expression is accepted as zero when it simplifies to the literal 0,
or when its magnitude at every seeded random sample stays below the
tolerance relative to the largest intermediate value.  Sampling keeps
branch-carrying symbols (z2 and friends) real and positive so that the
transcendental generators z2^c, ln z2, e^(c*x) are well defined; false
zeros are then measure-zero events.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .expr import (
    ZERO,
    DomainError,
    EvalContext,
    Expr,
    eval_with_scale,
    free_symbols,
    simplify,
)

# generic nonzero rationals used for parameter symbols unless overridden
DEFAULT_PARAM_POOL: tuple = tuple(
    Fraction(p, q)
    for q in (1, 2, 3, 4)
    for p in (-7, -5, -4, -3, -2, 2, 3, 4, 5, 7)
)

POSITIVE_VARS = frozenset({"z2"})


class DomainTooSmallError(ArithmeticError):
    """More than half of the samples hit evaluation domain errors."""


@dataclass(frozen=True)
class ZeroTestConfig:
    samples: int = 32
    tol: float = 1e-9
    seed: int = 0
    # per-symbol overrides: (lo, hi) real interval or a sequence of Fractions
    domains: Mapping[str, object] = field(default_factory=dict)

    def draw(self, sym, rng: random.Random):
        dom = self.domains.get(sym.name)
        if dom is None:
            if sym.is_param:
                dom = DEFAULT_PARAM_POOL
            elif sym.name in POSITIVE_VARS:
                dom = (0.5, 2.0)
            else:
                dom = (-2.0, 2.0)
        if isinstance(dom, tuple) and len(dom) == 2 and isinstance(dom[0], float):
            return rng.uniform(*dom)
        return rng.choice(list(dom))

    def sample_point(self, syms: Sequence, rng: random.Random) -> dict:
        return {s.name: self.draw(s, rng) for s in syms}


@dataclass(frozen=True)
class ZeroResult:
    is_zero: bool
    max_residual: float
    symbolic: bool = False
    samples: int = 0

    def __bool__(self) -> bool:
        return self.is_zero


def is_zero(e: Expr, cfg: ZeroTestConfig | None = None) -> ZeroResult:
    """Decide e == 0 on its domain, reporting the worst relative residual."""
    cfg = cfg or ZeroTestConfig()
    s = simplify(e)
    if s == ZERO:
        return ZeroResult(True, 0.0, symbolic=True)
    syms = sorted(free_symbols(s), key=lambda t: t.name)
    rng = random.Random(cfg.seed)
    worst = 0.0
    good = 0
    errors = 0
    attempts = 0
    max_attempts = 4 * cfg.samples
    while good < cfg.samples and attempts < max_attempts:
        attempts += 1
        point = cfg.sample_point(syms, rng)
        try:
            val, scale = eval_with_scale(s, EvalContext(point))
        except DomainError:
            errors += 1
            if errors > max_attempts // 2:
                raise DomainTooSmallError(
                    "domain too small: most samples hit evaluation errors"
                )
            continue
        good += 1
        resid = abs(complex(val)) / (1.0 + scale)
        if resid > worst:
            worst = resid
    if good < cfg.samples:
        raise DomainTooSmallError(
            "domain too small: most samples hit evaluation errors"
        )
    return ZeroResult(worst <= cfg.tol, worst, samples=good)
