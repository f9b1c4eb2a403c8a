"""Generalized free energies, second-law scans, and work quantities.

A free energy of order alpha is kBT * D_alpha(p || gibbs) - kBT ln Z, in
energy units with k_B = 1.  Transition feasibility is decided by scanning
the free-energy differences over a grid of orders covering [0, inf].
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    AlphaLike,
    AlphaValue,
    GibbsContext,
    ProbDist,
    as_alpha,
    gibbs_dist,
)
from .divergences import renyi_divergence, sgn, tsallis_divergence
from .errors import DomainError, OverflowToInfinity

SCAN_TOL = 1e-10


def default_alpha_grid() -> list[AlphaValue]:
    """Dense grid on [0, 2], coarse tail to 5, then 10, 30, infinity."""
    grid = [AlphaValue.zero()]
    grid += [AlphaValue.finite(round(0.05 * k, 2)) for k in range(1, 40) if k != 20]
    grid.insert(20, AlphaValue.one())
    grid.append(AlphaValue.finite(2.0))
    grid += [AlphaValue.finite(2.0 + 0.5 * k) for k in range(1, 7)]
    grid += [AlphaValue.finite(10.0), AlphaValue.finite(30.0)]
    grid.append(AlphaValue.pos_infinity())
    return grid


def renyi_free_energy(p: ProbDist, ctx: GibbsContext, alpha: AlphaLike) -> float:
    """kBT * D^R_alpha(p || gibbs(ctx)) - kBT ln Z."""
    g = gibbs_dist(ctx)
    d = renyi_divergence(p, g, alpha)
    return ctx.kBT * d - ctx.kBT * math.log(ctx.partition_fn)


def tsallis_free_energy(p: ProbDist, ctx: GibbsContext, alpha: AlphaLike) -> float:
    """kBT * D_alpha(p || gibbs(ctx)) - kBT ln Z."""
    g = gibbs_dist(ctx)
    d = tsallis_divergence(p, g, alpha)
    return ctx.kBT * d - ctx.kBT * math.log(ctx.partition_fn)


def compose_free_energy(
    f_s: float,
    f_m: float,
    ctx_s: GibbsContext,
    ctx_m: GibbsContext,
    alpha: AlphaLike,
) -> float:
    """Pseudo-additive composition of two subsystem free energies.

    Equals the free energy of the product state against the sum-Hamiltonian
    context; the cross term vanishes when either subsystem is thermal.
    """
    a = as_alpha(alpha)
    if not a.is_finite:
        raise DomainError("composition requires a finite order")
    if math.isinf(f_s) or math.isinf(f_m):
        raise OverflowToInfinity("cannot compose an infinite free energy")
    kBT = ctx_s.kBT
    ln_zs = math.log(ctx_s.partition_fn)
    ln_zm = math.log(ctx_m.partition_fn)
    av = a.value
    cross = sgn(av) * (av - 1.0) / kBT * (f_s + kBT * ln_zs) * (f_m + kBT * ln_zm)
    return f_s + f_m + cross


@dataclass(frozen=True)
class ScanReport:
    """Per-order free-energy differences for a candidate transition.

    deltas_* are kBT-scaled (energy units); deltas_*_raw are the underlying
    divergence differences in nats.
    """

    grid: tuple[AlphaValue, ...]
    deltas_renyi: tuple[float, ...]
    deltas_tsallis: tuple[float, ...]
    deltas_renyi_raw: tuple[float, ...]
    deltas_tsallis_raw: tuple[float, ...]
    allowed: bool
    first_violation: Optional[tuple[AlphaValue, float]]
    tol: float = SCAN_TOL

    def to_dict(self) -> dict:
        fv = None
        if self.first_violation is not None:
            fv = {"alpha": str(self.first_violation[0]),
                  "delta": self.first_violation[1]}
        return {
            "grid": [str(a) for a in self.grid],
            "deltas_renyi": list(self.deltas_renyi),
            "deltas_tsallis": list(self.deltas_tsallis),
            "deltas_renyi_raw": list(self.deltas_renyi_raw),
            "deltas_tsallis_raw": list(self.deltas_tsallis_raw),
            "allowed": self.allowed,
            "first_violation": fv,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def second_law_scan(
    p: ProbDist,
    p_prime: ProbDist,
    ctx: GibbsContext,
    grid: Optional[Sequence[AlphaLike]] = None,
    tol: float = SCAN_TOL,
) -> ScanReport:
    """Evaluate the free-energy differences F(p') - F(p) over the order grid.

    allowed is true iff every difference (both families) is <= tol; an
    infinite positive difference counts as a violation.
    """
    if grid is None:
        grid = default_alpha_grid()
    alphas = tuple(as_alpha(a) for a in grid)
    g = gibbs_dist(ctx)
    kBT = ctx.kBT

    dr: list[float] = []
    dt: list[float] = []
    dr_raw: list[float] = []
    dt_raw: list[float] = []
    allowed = True
    first_violation: Optional[tuple[AlphaValue, float]] = None
    for a in alphas:
        r0 = renyi_divergence(p, g, a)
        r1 = renyi_divergence(p_prime, g, a)
        t0 = tsallis_divergence(p, g, a)
        t1 = tsallis_divergence(p_prime, g, a)
        # inf - inf: both states violate the support condition equally; the
        # transition imposes no constraint at this order.
        draw = _diff(r1, r0)
        traw = _diff(t1, t0)
        dr_raw.append(draw)
        dt_raw.append(traw)
        dr.append(kBT * draw if math.isfinite(draw) else draw)
        dt.append(kBT * traw if math.isfinite(traw) else traw)
        violated = (draw > tol / kBT) or (traw > tol / kBT)
        if violated and allowed:
            allowed = False
            first_violation = (a, kBT * draw if math.isfinite(draw) else draw)
    return ScanReport(
        grid=alphas,
        deltas_renyi=tuple(dr),
        deltas_tsallis=tuple(dt),
        deltas_renyi_raw=tuple(dr_raw),
        deltas_tsallis_raw=tuple(dt_raw),
        allowed=allowed,
        first_violation=first_violation,
        tol=tol,
    )


def _diff(after: float, before: float) -> float:
    if math.isinf(after) and math.isinf(before):
        return 0.0
    return after - before


def work_distance(
    p: ProbDist,
    p_prime: ProbDist,
    ctx: GibbsContext,
    grid: Optional[Sequence[AlphaLike]] = None,
) -> float:
    """kBT * inf over orders >= 0 of [D^R(p||g) - D^R(p'||g)].

    Positive when the transition can fund work extraction; -inf if p' is
    infinitely more athermal at some order.
    """
    gaps = _renyi_gaps(p, p_prime, ctx, grid)
    return ctx.kBT * min(gaps)


def _renyi_gaps(
    p: ProbDist,
    p_prime: ProbDist,
    ctx: GibbsContext,
    grid: Optional[Sequence[AlphaLike]],
) -> list[float]:
    if grid is None:
        grid = default_alpha_grid()
    g = gibbs_dist(ctx)
    gaps = []
    for a in (as_alpha(x) for x in grid):
        if a.is_finite and a.value < 0:
            continue
        if a.is_neg_inf:
            continue
        d0 = renyi_divergence(p, g, a)
        d1 = renyi_divergence(p_prime, g, a)
        gaps.append(_diff(d0, d1))
    if not gaps:
        raise DomainError("grid contains no orders >= 0")
    return gaps


@dataclass(frozen=True)
class WorkBitSpec:
    """Two-level work reservoir; delta_E > 0 denotes extraction demand."""

    delta_E: float

    def __post_init__(self):
        if not math.isfinite(self.delta_E):
            raise DomainError("work-bit gap must be finite")


def work_bit_feasible(
    p_in: ProbDist,
    p_out: ProbDist,
    ctx: GibbsContext,
    wb: WorkBitSpec,
    grid: Optional[Sequence[AlphaLike]] = None,
) -> bool:
    """True iff every order gap D^R(in) - D^R(out) covers beta * delta_E."""
    gaps = _renyi_gaps(p_in, p_out, ctx, grid)
    need = ctx.beta * wb.delta_E
    return all(gap >= need - SCAN_TOL for gap in gaps)


def work_extract(
    p_in: ProbDist,
    p_out: ProbDist,
    ctx: GibbsContext,
    grid: Optional[Sequence[AlphaLike]] = None,
) -> float:
    """Largest guaranteed work gain, in nats: inf over orders of the gap."""
    return min(_renyi_gaps(p_in, p_out, ctx, grid))


def work_cost(
    p_in: ProbDist,
    p_out: ProbDist,
    ctx: GibbsContext,
    grid: Optional[Sequence[AlphaLike]] = None,
) -> float:
    """Smallest sufficient work investment, in nats: sup of the reverse gap."""
    return max(-gap for gap in _renyi_gaps(p_in, p_out, ctx, grid))
