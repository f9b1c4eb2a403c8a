"""Validated domain types: probability vectors, thermal contexts, divergence orders.

All values are immutable after construction and safe to share between threads.
Extended-real results (divergences that diverge) are represented by IEEE
``math.inf``, which already absorbs addition and max and compares totally
against finite floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import DimensionMismatch, DomainError, NotADistribution

NORM_TOL = 1e-12        # tolerance after normalization
INGEST_TOL = 1e-9       # default tolerance at ingestion

INF = math.inf


@dataclass(frozen=True)
class ProbDist:
    """Finite probability vector with non-negative weights summing to one."""

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.weights) < 1:
            raise NotADistribution("empty weight vector")
        if any(w < 0 for w in self.weights):
            raise NotADistribution(f"negative weight in {self.weights!r}")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > NORM_TOL:
            raise NotADistribution(f"weights sum to {total!r}, not 1")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def rank(self) -> int:
        return sum(1 for w in self.weights if w > 0)

    @property
    def full_rank(self) -> bool:
        return all(w > 0 for w in self.weights)

    def asarray(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def make_prob_dist(raw: Sequence[float], tol: float = INGEST_TOL) -> ProbDist:
    """Clamp small negatives, renormalize, and wrap as a ProbDist.

    Raises NotADistribution if any entry is below -tol or the sum deviates
    from one by more than tol.
    """
    vals = [float(x) for x in raw]
    if not vals:
        raise NotADistribution("empty input")
    for x in vals:
        if x < -tol:
            raise NotADistribution(f"component {x!r} below -{tol!r}")
    total = math.fsum(vals)
    if abs(total - 1.0) > tol:
        raise NotADistribution(f"sum {total!r} deviates from 1 beyond {tol!r}")
    clamped = [max(x, 0.0) for x in vals]
    total = math.fsum(clamped)
    return ProbDist(tuple(x / total for x in clamped))


def uniform(n: int) -> ProbDist:
    """Uniform distribution on n outcomes."""
    if n < 1:
        raise DomainError("dimension must be positive")
    return ProbDist((1.0 / n,) * n)


@dataclass(frozen=True)
class GibbsContext:
    """Thermal reference: energy levels and inverse temperature (k_B = 1)."""

    energies: tuple[float, ...]
    beta: float

    def __post_init__(self):
        if not self.energies:
            raise DomainError("at least one energy level required")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be a positive finite real, got {self.beta!r}")
        object.__setattr__(self, "energies", tuple(float(e) for e in self.energies))

    @property
    def dim(self) -> int:
        return len(self.energies)

    @property
    def partition_fn(self) -> float:
        return math.fsum(math.exp(-self.beta * e) for e in self.energies)

    @property
    def kBT(self) -> float:
        return 1.0 / self.beta


def gibbs_dist(ctx: GibbsContext) -> ProbDist:
    """Thermal weights exp(-beta E_i) / Z for the given context."""
    z = ctx.partition_fn
    return ProbDist(tuple(math.exp(-ctx.beta * e) / z for e in ctx.energies))


def joint_context(ctx_a: GibbsContext, ctx_b: GibbsContext) -> GibbsContext:
    """Context of the composite system with sum Hamiltonian (same bath)."""
    if abs(ctx_a.beta - ctx_b.beta) > 1e-15:
        raise DomainError("subsystems must share the bath inverse temperature")
    energies = tuple(ea + eb for ea in ctx_a.energies for eb in ctx_b.energies)
    return GibbsContext(energies, ctx_a.beta)


def tensor(p: ProbDist, q: ProbDist) -> ProbDist:
    """Product distribution, index order (first factor major)."""
    out = np.outer(p.asarray(), q.asarray()).ravel()
    return ProbDist(tuple(out))


# ---------------------------------------------------------------------------
# Divergence order
# ---------------------------------------------------------------------------

_TAG_ZERO = "zero"
_TAG_ONE = "one"
_TAG_FINITE = "finite"
_TAG_POS_INF = "+inf"
_TAG_NEG_INF = "-inf"


@dataclass(frozen=True)
class AlphaValue:
    """Order of a divergence: a finite real or one of the symbolic limits.

    finite(0) and finite(1) are normalized to the symbolic tags at
    construction, so every consumer can branch on exactly five cases.
    """

    tag: str
    x: float = field(default=math.nan)

    ZERO_TAG = _TAG_ZERO
    ONE_TAG = _TAG_ONE
    FINITE_TAG = _TAG_FINITE
    POS_INF_TAG = _TAG_POS_INF
    NEG_INF_TAG = _TAG_NEG_INF

    @classmethod
    def zero(cls) -> "AlphaValue":
        return cls(_TAG_ZERO, 0.0)

    @classmethod
    def one(cls) -> "AlphaValue":
        return cls(_TAG_ONE, 1.0)

    @classmethod
    def pos_infinity(cls) -> "AlphaValue":
        return cls(_TAG_POS_INF, math.inf)

    @classmethod
    def neg_infinity(cls) -> "AlphaValue":
        return cls(_TAG_NEG_INF, -math.inf)

    @classmethod
    def finite(cls, x: float) -> "AlphaValue":
        x = float(x)
        if math.isnan(x):
            raise DomainError("alpha cannot be NaN")
        if x == 0.0:
            return cls.zero()
        if x == 1.0:
            return cls.one()
        if x == math.inf:
            return cls.pos_infinity()
        if x == -math.inf:
            return cls.neg_infinity()
        return cls(_TAG_FINITE, x)

    # -- predicates --------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.tag == _TAG_ZERO

    @property
    def is_one(self) -> bool:
        return self.tag == _TAG_ONE

    @property
    def is_pos_inf(self) -> bool:
        return self.tag == _TAG_POS_INF

    @property
    def is_neg_inf(self) -> bool:
        return self.tag == _TAG_NEG_INF

    @property
    def is_finite(self) -> bool:
        return self.tag in (_TAG_ZERO, _TAG_ONE, _TAG_FINITE)

    @property
    def value(self) -> float:
        """Numeric value (inf for the infinite tags)."""
        return self.x

    def __str__(self) -> str:
        if self.tag == _TAG_ZERO:
            return "0"
        if self.tag == _TAG_ONE:
            return "1"
        if self.tag == _TAG_POS_INF:
            return "inf"
        if self.tag == _TAG_NEG_INF:
            return "-inf"
        if self.x == int(self.x):
            return str(int(self.x))
        return repr(self.x)

    @classmethod
    def parse(cls, token: Union[str, float, int, "AlphaValue"]) -> "AlphaValue":
        if isinstance(token, AlphaValue):
            return token
        if isinstance(token, str):
            t = token.strip().lower()
            if t in ("inf", "+inf", "infinity"):
                return cls.pos_infinity()
            if t in ("-inf", "-infinity"):
                return cls.neg_infinity()
            try:
                return cls.finite(float(t))
            except ValueError as exc:
                raise DomainError(f"cannot parse alpha {token!r}") from exc
        return cls.finite(float(token))


AlphaLike = Union[AlphaValue, float, int, str]


def as_alpha(a: AlphaLike) -> AlphaValue:
    return AlphaValue.parse(a)


def check_same_dim(p: ProbDist, q: ProbDist) -> None:
    if p.dim != q.dim:
        raise DimensionMismatch(f"dim {p.dim} vs {q.dim}")
