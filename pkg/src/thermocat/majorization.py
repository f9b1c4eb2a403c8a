"""Thermo-majorization curves, dominance verdicts, and constructive channels.

A curve is built by sorting outcomes by the ratio p_i/g_i (descending) and
accumulating (sum g, sum p) pairs: the state p can reach p' under thermal
operations with Gibbs reference g iff p's curve lies everywhere on or above
p's curve of p'.  The channel constructions (embedding, rationalization,
full-rank perturbation) use exact rational arithmetic.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .core import AlphaLike, ProbDist, as_alpha, check_same_dim
from .divergences import tsallis_divergence
from .errors import (
    DegenerateRemainder,
    DimensionMismatch,
    DomainError,
    FullRankRequired,
    InvalidM,
    NotRational,
    ScheduleViolation,
)

DOMINANCE_TOL = 1e-9
_RATIO_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class ThermoCurve:
    """Piecewise-linear concave curve from (0,0) to (1,1).

    x climbs through cumulative reference weight, y through cumulative
    probability; collinear interior points are merged away.
    """

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self):
        bp = self.breakpoints
        if len(bp) < 2 or bp[0] != (0.0, 0.0):
            raise DomainError("curve must start at (0,0)")
        if abs(bp[-1][0] - 1.0) > 1e-9 or abs(bp[-1][1] - 1.0) > 1e-9:
            raise DomainError("curve must end at (1,1)")

    def evaluate(self, x: float) -> float:
        """Piecewise-linear value at x in [0,1]."""
        xs = [b[0] for b in self.breakpoints]
        ys = [b[1] for b in self.breakpoints]
        return float(np.interp(x, xs, ys))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,y\n")
        for x, y in self.breakpoints:
            buf.write(f"{x:.17g},{y:.17g}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class StochasticMatrix:
    """Column-stochastic matrix acting on probability vectors from the left."""

    entries: tuple[tuple[float, ...], ...]   # rows

    def __post_init__(self):
        arr = self.asarray()
        if np.any(arr < 0):
            raise DomainError("negative entry in stochastic matrix")
        sums = arr.sum(axis=0)
        if np.any(np.abs(sums - 1.0) > 1e-12):
            raise DomainError("columns must sum to one")

    @property
    def dim_out(self) -> int:
        return len(self.entries)

    @property
    def dim_in(self) -> int:
        return len(self.entries[0])

    def asarray(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    @classmethod
    def identity(cls, n: int) -> "StochasticMatrix":
        return cls(tuple(tuple(1.0 if i == j else 0.0 for j in range(n))
                         for i in range(n)))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a feasibility test; forbidden verdicts carry a witness."""

    allowed: bool
    witness: Optional[tuple] = None

    def __post_init__(self):
        if not self.allowed and self.witness is None:
            raise DomainError("forbidden verdict requires a witness")


def apply_channel(ch: StochasticMatrix, p: ProbDist) -> ProbDist:
    if ch.dim_in != p.dim:
        raise DimensionMismatch(f"channel takes dim {ch.dim_in}, state has {p.dim}")
    out = ch.asarray() @ p.asarray()
    return ProbDist(tuple(out))


# ---------------------------------------------------------------------------
# Curves and dominance
# ---------------------------------------------------------------------------

def thermo_curve(p: ProbDist, g: ProbDist) -> ThermoCurve:
    """Ratio-sorted cumulative curve of p against the full-rank reference g."""
    check_same_dim(p, g)
    if not g.full_rank:
        raise FullRankRequired("reference distribution has a zero component")
    ratios = [pi / gi for pi, gi in zip(p.weights, g.weights)]
    order = sorted(range(p.dim), key=lambda i: (-ratios[i], i))

    pts: list[tuple[float, float]] = [(0.0, 0.0)]
    cx = cy = 0.0
    prev_ratio: Optional[float] = None
    for i in order:
        cx += g.weights[i]
        cy += p.weights[i]
        r = ratios[i]
        if prev_ratio is not None and math.isclose(
            r, prev_ratio, rel_tol=_RATIO_TIE_RTOL, abs_tol=1e-15
        ):
            pts[-1] = (cx, cy)      # extend the collinear segment
        else:
            pts.append((cx, cy))
        prev_ratio = r
    # force exact endpoints against cumulative rounding
    pts[-1] = (1.0, 1.0)
    return ThermoCurve(tuple(pts))


def dominates(c1: ThermoCurve, c2: ThermoCurve, tol: float = DOMINANCE_TOL) -> Verdict:
    """allowed iff c1 lies on or above c2 (within tol) at every breakpoint x."""
    xs = sorted({b[0] for b in c1.breakpoints} | {b[0] for b in c2.breakpoints})
    worst_gap = 0.0
    witness = None
    for x in xs:
        y1 = c1.evaluate(x)
        y2 = c2.evaluate(x)
        gap = y2 - y1
        if gap > tol and gap > worst_gap:
            worst_gap = gap
            witness = (x, y1, y2)
    if witness is None:
        return Verdict(True)
    return Verdict(False, witness)


def thermal_feasible(
    p: ProbDist, p_prime: ProbDist, g: ProbDist, tol: float = DOMINANCE_TOL
) -> Verdict:
    """Can p reach p_prime under thermal operations with reference g?"""
    return dominates(thermo_curve(p, g), thermo_curve(p_prime, g), tol)


# ---------------------------------------------------------------------------
# Embedding channel
# ---------------------------------------------------------------------------

def embed(p: ProbDist, q_numerators: Sequence[int], N: int) -> ProbDist:
    """Fine-grain p against the rational reference q_i = d_i / N.

    Each outcome i is split into d_i equal pieces of weight p_i/d_i, so the
    reference becomes uniform on N outcomes while every divergence between
    p and q is preserved.
    """
    d = list(q_numerators)
    if any((not isinstance(k, (int, np.integer))) or k <= 0 for k in d):
        raise NotRational("reference numerators must be positive integers")
    if sum(d) != N:
        raise NotRational(f"numerators sum to {sum(d)}, expected {N}")
    if len(d) != p.dim:
        raise DimensionMismatch(f"{len(d)} numerators for dim {p.dim}")
    out: list[float] = []
    for pi, di in zip(p.weights, d):
        out.extend([pi / di] * di)
    return ProbDist(tuple(out))


# ---------------------------------------------------------------------------
# Rationalization (exact channel, Fraction arithmetic)
# ---------------------------------------------------------------------------

def rationalize(p: ProbDist, M: int) -> tuple[ProbDist, StochasticMatrix, tuple[Fraction, ...]]:
    """Push the sorted distribution p onto the grid of multiples of 1/M.

    p must be sorted non-increasing.  Every non-minimal positive component
    is rounded up to the next multiple of 1/M; the smallest positive
    component absorbs the deficit.  Returns the rational distribution, the
    column-stochastic channel realizing the move, and the exact fractions.
    Total-variation distance to p is below m/M (m = number of positive
    components).
    """
    if not isinstance(M, (int, np.integer)) or M <= 0:
        raise InvalidM(f"M must be a positive integer, got {M!r}")
    w = list(p.weights)
    if any(w[i] < w[i + 1] - 1e-15 for i in range(len(w) - 1)):
        raise DomainError("input must be sorted non-increasing; use rationalize_sorted")
    m = p.rank
    n = p.dim

    fracs: list[Fraction] = []
    for i in range(m - 1):
        fracs.append(Fraction(math.ceil(M * w[i] - 1e-12), M))
    last = Fraction(1) - sum(fracs, Fraction(0))
    if last <= 0:
        raise DegenerateRemainder(f"smallest component driven to {last}; increase M")
    fracs.append(last)
    fracs.extend([Fraction(0)] * (n - m))
    p_prime = ProbDist(tuple(float(f) for f in fracs))

    # channel: identity except column m-1 (the absorber), which redistributes
    # upward the mass gained by the rounded components
    cols = np.eye(n)
    bm = w[m - 1]
    col = np.zeros(n)
    for j in range(m - 1):
        col[j] = float(fracs[j]) - w[j]
        col[j] /= bm
    col[m - 1] = 1.0 - col[:m - 1].sum()
    cols[:, m - 1] = col
    channel = StochasticMatrix(tuple(tuple(row) for row in cols))
    return p_prime, channel, tuple(fracs)


def rationalize_sorted(
    p: ProbDist, M: int
) -> tuple[ProbDist, StochasticMatrix, tuple[int, ...]]:
    """rationalize for unsorted input; returns results in the original order
    along with the sorting permutation (original index per sorted slot)."""
    order = sorted(range(p.dim), key=lambda i: (-p.weights[i], i))
    sorted_p = ProbDist(tuple(p.weights[i] for i in order))
    p_prime_s, ch_s, _ = rationalize(sorted_p, M)
    inv = [0] * p.dim
    for slot, i in enumerate(order):
        inv[i] = slot
    p_prime = ProbDist(tuple(p_prime_s.weights[inv[i]] for i in range(p.dim)))
    perm = np.zeros((p.dim, p.dim))
    for slot, i in enumerate(order):
        perm[slot, i] = 1.0
    # conjugate the sorted-basis channel back to the original basis
    chan = perm.T @ ch_s.asarray() @ perm
    return p_prime, StochasticMatrix(tuple(tuple(r) for r in chan)), tuple(order)


def perturb_full_rank(
    p_prime: ProbDist, schedule: Sequence[Fraction]
) -> tuple[ProbDist, Fraction]:
    """Fill the zero tail of p_prime in len(schedule) noise steps.

    The k-th step peels s_k = schedule[k] off the current positive components
    (equally) and deposits it on the next zero slot; nesting requires each
    s_k to fit under the previous smallest component with a 1/(m+k-1) margin.
    Returns the full-rank result and the schedule sum, which bounds the
    total-variation distance to the input.  Each individual step moves
    exactly s_k of mass, so the bound is attained for a single step;
    later steps partially drain earlier deposits, so for two or more steps
    the end-to-end distance is strictly below the sum.
    """
    w = list(p_prime.weights)
    m = p_prime.rank
    z = p_prime.dim - m
    if any(x > 0 for x in w[m:]):
        raise DomainError("positive components must precede the zero tail")
    steps = [Fraction(s) for s in schedule]
    if len(steps) != z:
        raise ScheduleViolation(f"need {z} steps, got {len(steps)}")
    if z == 0:
        return p_prime, Fraction(0)
    if any(s <= 0 or s >= 1 for s in steps):
        raise ScheduleViolation("each step must lie in (0,1)")

    prev_min = Fraction(w[m - 1]).limit_denominator(10 ** 12)
    if abs(float(prev_min) - w[m - 1]) > 1e-12:
        raise NotRational("input components must be rational")
    for k, s in enumerate(steps, start=1):
        if prev_min < (1 + Fraction(1, m + k - 1)) * s:
            raise ScheduleViolation(
                f"step {k}: {s} too large under previous minimum {prev_min}"
            )
        prev_min = s

    base = [Fraction(x).limit_denominator(10 ** 12) for x in w[:m]]
    drain = sum(Fraction(s, m + k) for k, s in enumerate(steps))
    out: list[Fraction] = [b - drain for b in base]
    for i in range(1, z + 1):
        tail_drain = sum(Fraction(steps[k - 1], m + k - 1)
                         for k in range(i + 1, z + 1))
        out.append(steps[i - 1] - tail_drain)
    dist = sum(steps, Fraction(0))
    q = ProbDist(tuple(float(x) for x in out))
    if not q.full_rank:
        raise ScheduleViolation("schedule left a zero component")
    return q, dist


# ---------------------------------------------------------------------------
# Catalytic relative majorization
# ---------------------------------------------------------------------------

def catalytic_relative_majorization(
    p: ProbDist,
    q: ProbDist,
    p_prime: ProbDist,
    q_prime: ProbDist,
    grid: Sequence[AlphaLike],
    tol: float = 1e-12,
) -> Verdict:
    """Both divergence orderings must hold at every grid order >= 1/2:
    D(p||q) >= D(p'||q') and D(q||p) >= D(q'||p')."""
    check_same_dim(p, q)
    check_same_dim(p_prime, q_prime)
    for a in (as_alpha(x) for x in grid):
        if a.is_finite and a.value < 0.5:
            continue
        if a.is_neg_inf:
            continue
        fwd0 = tsallis_divergence(p, q, a)
        fwd1 = tsallis_divergence(p_prime, q_prime, a)
        if _lt(fwd0, fwd1, tol):
            return Verdict(False, ("forward", str(a), fwd0, fwd1))
        rev0 = tsallis_divergence(q, p, a)
        rev1 = tsallis_divergence(q_prime, p_prime, a)
        if _lt(rev0, rev1, tol):
            return Verdict(False, ("reverse", str(a), rev0, rev1))
    return Verdict(True)


def _lt(lhs: float, rhs: float, tol: float) -> bool:
    if math.isinf(lhs):
        return False
    if math.isinf(rhs):
        return True
    return lhs < rhs - tol
