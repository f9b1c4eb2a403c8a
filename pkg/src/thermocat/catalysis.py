"""Finite-size catalysis with approximate catalyst return.

The benchmark setting is a trivial catalyst Hamiltonian: the catalyst's
thermal reference is uniform over its d_M levels.  The free-energy change
of the joint process then splits into the system change weighted by the
catalyst power sum plus a penalty term controlled by how far the returned
spectrum drifted from the initial one.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import AlphaLike, GibbsContext, ProbDist, as_alpha, uniform
from .divergences import sgn, tsallis_divergence
from .errors import (
    AlphaOne,
    DomainError,
    EpsilonTooLarge,
    OddDimension,
)
from .free_energy import tsallis_free_energy


def _tv(p: ProbDist, q: ProbDist) -> float:
    return 0.5 * float(np.abs(p.asarray() - q.asarray()).sum())


@dataclass(frozen=True)
class CatalystProfile:
    """Initial and returned catalyst spectra with their return error."""

    p_init: ProbDist
    q_final: ProbDist
    d_M: int
    epsilon: float

    def __post_init__(self):
        if self.p_init.dim != self.d_M or self.q_final.dim != self.d_M:
            raise DomainError("spectra must have dimension d_M")
        if abs(_tv(self.p_init, self.q_final) - self.epsilon) > 1e-12:
            raise DomainError(
                f"declared epsilon {self.epsilon} != "
                f"total-variation distance {_tv(self.p_init, self.q_final)}"
            )


@dataclass(frozen=True)
class ApproxDeltaBreakdown:
    """Pieces of the joint free-energy change for the uniform-reference case."""

    P_alpha: float
    Q_alpha: float
    A_alpha: float
    delta_system: float
    delta_total: float


def _finite_alpha(alpha: AlphaLike) -> float:
    a = as_alpha(alpha)
    if a.is_one:
        raise AlphaOne("order one is a pole here; use the scan path")
    if not a.is_finite:
        raise DomainError("finite order required")
    return a.value


def exact_catalytic_delta(
    delta_F_system: float, sigma: ProbDist, gamma_M: ProbDist, alpha: AlphaLike
) -> float:
    """Joint free-energy change when the catalyst is returned exactly.

    The catalyst does not cancel from the pseudo-additive composition; it
    rescales the system change by 1 + sgn(a)(a-1) D_a(sigma||gamma_M).
    """
    a = as_alpha(alpha)
    if not a.is_finite:
        raise DomainError("finite order required")
    av = a.value
    d = tsallis_divergence(sigma, gamma_M, a)
    return delta_F_system * (1.0 + sgn(av) * (av - 1.0) * d)


def athermality_cap(alpha: float) -> float:
    """Upper bound 1/(1-a) on the divergence from uniform for 0 < a < 1."""
    if not (0.0 < alpha < 1.0):
        raise DomainError("cap defined for orders strictly between 0 and 1")
    return 1.0 / (1.0 - alpha)


def power_sum(p: ProbDist, alpha: float) -> float:
    w = p.asarray()
    w = w[w > 0]
    return float(np.sum(w ** alpha))


def approx_catalytic_delta(
    p_sys: ProbDist,
    p_sys_prime: ProbDist,
    ctx_S: GibbsContext,
    prof: CatalystProfile,
    alpha: AlphaLike,
) -> ApproxDeltaBreakdown:
    """Joint free-energy change with approximate catalyst return.

    delta_total = d^(a-1) [ P_a dF_S + (Q_a - P_a)(F_a(rho'_S) + A_a) ]
    where P_a, Q_a are the power sums of the initial and returned spectra
    and A_a = kBT (1 + (a-1) ln Z_S)/(a-1).
    """
    av = _finite_alpha(alpha)
    kBT = ctx_S.kBT
    ln_z = math.log(ctx_S.partition_fn)
    P = power_sum(prof.p_init, av)
    Q = power_sum(prof.q_final, av)
    A = kBT * (1.0 + (av - 1.0) * ln_z) / (av - 1.0)
    f0 = tsallis_free_energy(p_sys, ctx_S, alpha)
    f1 = tsallis_free_energy(p_sys_prime, ctx_S, alpha)
    d_sys = f1 - f0
    total = prof.d_M ** (av - 1.0) * (P * d_sys + (Q - P) * (f1 + A))
    return ApproxDeltaBreakdown(
        P_alpha=P, Q_alpha=Q, A_alpha=A, delta_system=d_sys, delta_total=total
    )


def continuity_bound(alpha: float, epsilon: float, d_M: int) -> float:
    """Bound on |Q_a - P_a| for spectra at total-variation distance epsilon."""
    if alpha <= 0:
        raise DomainError("order must be positive")
    if epsilon < 0:
        raise DomainError("epsilon must be non-negative")
    if alpha >= 1.0:
        return 2.0 * alpha * epsilon
    return d_M ** (1.0 - alpha) * (2.0 * epsilon) ** alpha


def eps_bound(
    alpha: float,
    P_alpha: float,
    delta_F_system: float,
    F_prime_plus_A: float,
    d_M: int,
) -> float:
    """Return error that provably keeps the joint change non-positive.

    Sufficient, not necessary.
    """
    if alpha <= 0 or alpha == 1.0:
        raise DomainError("order must be positive and not one")
    if delta_F_system > 0:
        raise DomainError("system change must be non-positive")
    denom = abs(F_prime_plus_A)
    if denom == 0:
        raise DomainError("zero denominator")
    slack = P_alpha * (-delta_F_system)
    if alpha >= 1.0:
        return slack / (2.0 * alpha * denom)
    return 0.5 * (slack / (d_M ** (1.0 - alpha) * denom)) ** (1.0 / alpha)


# ---------------------------------------------------------------------------
# Benchmark profiles
# ---------------------------------------------------------------------------

def profile_distributed(d_M: int, epsilon: float) -> CatalystProfile:
    """Initial spectrum 1/d +- 2 eps/d on the two halves; uniform return."""
    if d_M < 2 or d_M % 2:
        raise OddDimension(f"dimension must be even and >= 2, got {d_M}")
    if epsilon < 0:
        raise DomainError("epsilon must be non-negative")
    if 2.0 * epsilon / d_M > 1.0 / d_M:
        raise EpsilonTooLarge(f"positivity needs epsilon <= 1/2, got {epsilon}")
    half = d_M // 2
    hi = 1.0 / d_M + 2.0 * epsilon / d_M
    lo = 1.0 / d_M - 2.0 * epsilon / d_M
    p = ProbDist((hi,) * half + (lo,) * half)
    return CatalystProfile(p, uniform(d_M), d_M, epsilon)


def profile_concentrated(d_M: int, epsilon: float) -> CatalystProfile:
    """Initial spectrum perturbed on two levels only: 1/d + eps, 1/d - eps."""
    if d_M < 2:
        raise DomainError("dimension must be at least 2")
    if epsilon < 0:
        raise DomainError("epsilon must be non-negative")
    if epsilon > 1.0 / d_M:
        raise EpsilonTooLarge(f"positivity needs epsilon <= 1/{d_M}, got {epsilon}")
    base = 1.0 / d_M
    p = ProbDist((base + epsilon, base - epsilon) + (base,) * (d_M - 2))
    return CatalystProfile(p, uniform(d_M), d_M, epsilon)


def gap_exact(prof: CatalystProfile, alpha: AlphaLike) -> float:
    """Q_a - P_a by direct summation."""
    av = _finite_alpha(alpha)
    return power_sum(prof.q_final, av) - power_sum(prof.p_init, av)


def gap_leading_order(kind: str, d_M: int, epsilon: float, alpha: float) -> float:
    """Second-order expansion of Q_a - P_a in the return error.

    distributed: -2 a (a-1) d^(1-a) eps^2
    concentrated: -a (a-1) d^(2-a) eps^2 (note the extra factor d/2)
    """
    if kind == "distributed":
        return -2.0 * alpha * (alpha - 1.0) * d_M ** (1.0 - alpha) * epsilon ** 2
    if kind == "concentrated":
        return -alpha * (alpha - 1.0) * d_M ** (2.0 - alpha) * epsilon ** 2
    raise DomainError(f"unknown profile kind {kind!r}")


def leading_order_delta(
    kind: str,
    d_M: int,
    epsilon: float,
    delta_F_system: float,
    F_system_initial_plus_A: float,
    alpha: float,
) -> float:
    """Joint change to second order in the return error."""
    if kind == "distributed":
        coeff = 2.0 * alpha * (alpha - 1.0) * epsilon ** 2
    elif kind == "concentrated":
        coeff = alpha * (alpha - 1.0) * d_M * epsilon ** 2
    else:
        raise DomainError(f"unknown profile kind {kind!r}")
    return delta_F_system - coeff * F_system_initial_plus_A


def sweep(
    kinds: Sequence[str],
    d_values: Sequence[int],
    eps_values: Sequence[float],
    alphas: Sequence[float],
    p_sys: ProbDist,
    p_sys_prime: ProbDist,
    ctx_S: GibbsContext,
) -> str:
    """CSV over the (kind, d_M, epsilon, alpha) landscape."""
    build = {"distributed": profile_distributed, "concentrated": profile_concentrated}
    buf = io.StringIO()
    buf.write("kind,d_M,epsilon,alpha,P_alpha,Q_alpha,gap_exact,gap_leading,delta_total\n")
    for kind in kinds:
        for d in d_values:
            for eps in eps_values:
                prof = build[kind](d, eps)
                for a in alphas:
                    br = approx_catalytic_delta(p_sys, p_sys_prime, ctx_S, prof, a)
                    ge = gap_exact(prof, a)
                    gl = gap_leading_order(kind, d, eps, a)
                    buf.write(
                        f"{kind},{d},{eps:.17g},{a:.17g},{br.P_alpha:.17g},"
                        f"{br.Q_alpha:.17g},{ge:.17g},{gl:.17g},{br.delta_total:.17g}\n"
                    )
    return buf.getvalue()
