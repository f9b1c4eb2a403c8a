"""Renyi and non-additive (Tsallis) entropies and divergences.

Both families are implemented for every order tag: finite real, 0, 1, and
the two infinities.  Values are in nats.  Divergences return ``math.inf``
when a support condition fails at orders above one; orders below zero
require strictly positive vectors and raise instead.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from .core import AlphaLike, AlphaValue, ProbDist, as_alpha, check_same_dim
from .errors import DomainError, OverflowToInfinity, SupportError

# p_i^alpha underflows/overflows in doubles for large orders; switch to
# log-domain accumulation well before that.
_LOG_DOMAIN_ALPHA = 30.0

_NEG_CLAMP = -1e-12     # round tiny negative results (float noise) up to zero


def _clamp(v: float) -> float:
    if _NEG_CLAMP < v < 0.0:
        return 0.0
    return v


def sgn(x: float) -> float:
    if x > 0:
        return 1.0
    if x < 0:
        return -1.0
    return 0.0


# ---------------------------------------------------------------------------
# Deformed logarithm / exponential
# ---------------------------------------------------------------------------

def ln_alpha(x: float, alpha: AlphaLike) -> float:
    """Deformed logarithm (x^(1-a) - 1)/(1-a); natural log at order one."""
    a = as_alpha(alpha)
    if x <= 0:
        raise DomainError(f"ln_alpha requires x > 0, got {x!r}")
    if a.is_one:
        return math.log(x)
    if not a.is_finite:
        raise DomainError("ln_alpha is defined for finite orders only")
    av = a.value
    return (x ** (1.0 - av) - 1.0) / (1.0 - av)


def exp_alpha(x: float, alpha: AlphaLike) -> float:
    """Deformed exponential [1 + (1-a)x]^(1/(1-a)); inverse of ln_alpha."""
    a = as_alpha(alpha)
    if a.is_one:
        return math.exp(x)
    if not a.is_finite:
        raise DomainError("exp_alpha is defined for finite orders only")
    av = a.value
    base = 1.0 + (1.0 - av) * x
    if base < 0:
        raise DomainError(f"exp_alpha base negative: {base!r}")
    return base ** (1.0 / (1.0 - av))


# ---------------------------------------------------------------------------
# Entropies
# ---------------------------------------------------------------------------

def _check_support_negative_alpha(p: ProbDist) -> None:
    if not p.full_rank:
        raise SupportError("negative orders require a strictly positive vector")


def _power_sum(p: ProbDist, a: float) -> float:
    """Sum of p_i^a over the support of p (zero entries skipped)."""
    w = p.asarray()
    w = w[w > 0]
    if a > _LOG_DOMAIN_ALPHA:
        return float(math.exp(logsumexp(a * np.log(w))))
    return float(np.sum(w ** a))


def _log_power_sum(p: ProbDist, a: float) -> float:
    """ln of the power sum, evaluated stably in the log domain."""
    w = p.asarray()
    w = w[w > 0]
    return float(logsumexp(a * np.log(w)))


def shannon_entropy(p: ProbDist) -> float:
    w = p.asarray()
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def renyi_entropy(p: ProbDist, alpha: AlphaLike) -> float:
    """Renyi entropy sgn(a)/(1-a) * ln sum p_i^a, in nats.

    Limit orders: ln(rank) at 0, Shannon at 1, -ln max p at +inf,
    ln min p at -inf.
    """
    a = as_alpha(alpha)
    if a.is_zero:
        return math.log(p.rank)
    if a.is_one:
        return shannon_entropy(p)
    if a.is_pos_inf:
        return -math.log(max(p.weights))
    if a.is_neg_inf:
        _check_support_negative_alpha(p)
        return math.log(min(p.weights))
    av = a.value
    if av < 0:
        _check_support_negative_alpha(p)
    return _clamp(sgn(av) / (1.0 - av) * _log_power_sum(p, av))


def tsallis_entropy(p: ProbDist, alpha: AlphaLike) -> float:
    """Non-additive entropy sgn(a)/(1-a) * (sum p_i^a - 1).

    Limit orders: rank-1 at 0, Shannon at 1, 0 at +inf, ln min p at -inf.
    """
    a = as_alpha(alpha)
    if a.is_zero:
        return float(p.rank - 1)
    if a.is_one:
        return shannon_entropy(p)
    if a.is_pos_inf:
        return 0.0
    if a.is_neg_inf:
        _check_support_negative_alpha(p)
        return math.log(min(p.weights))
    av = a.value
    if av < 0:
        _check_support_negative_alpha(p)
    return _clamp(sgn(av) / (1.0 - av) * (_power_sum(p, av) - 1.0))


# ---------------------------------------------------------------------------
# Divergences
# ---------------------------------------------------------------------------

def _kl(p: ProbDist, q: ProbDist) -> float:
    pv = p.asarray()
    qv = q.asarray()
    mask = pv > 0
    if np.any(qv[mask] == 0):
        return math.inf
    return _clamp(float(np.sum(pv[mask] * (np.log(pv[mask]) - np.log(qv[mask])))))


def _max_log_ratio(p: ProbDist, q: ProbDist) -> float:
    """ln max_i p_i/q_i over supp(q); +inf if p puts mass where q does not."""
    best = -math.inf
    for pi, qi in zip(p.weights, q.weights):
        if qi == 0:
            if pi > 0:
                return math.inf
            continue
        if pi == 0:
            continue
        best = max(best, math.log(pi) - math.log(qi))
    # p could be zero everywhere q is positive only if p is the zero vector,
    # which ProbDist forbids; still guard the degenerate case.
    return _clamp(best)


def _cross_log_sum(p: ProbDist, q: ProbDist, a: float) -> float:
    """ln sum p_i^a q_i^(1-a) over supp(p); +inf when a > 1 and q vanishes
    on part of supp(p).  For a < 1 those terms contribute zero and are
    skipped; -inf is returned if nothing survives."""
    pv = p.asarray()
    qv = q.asarray()
    mask = pv > 0
    pv, qv = pv[mask], qv[mask]
    if np.any(qv == 0):
        if a > 1:
            return math.inf
        keep = qv > 0
        pv, qv = pv[keep], qv[keep]
        if pv.size == 0:
            return -math.inf
    return float(logsumexp(a * np.log(pv) + (1.0 - a) * np.log(qv)))


def renyi_divergence(p: ProbDist, q: ProbDist, alpha: AlphaLike) -> float:
    """Renyi divergence sgn(a)/(a-1) * ln sum p_i^a q_i^(1-a), in nats.

    Returns inf when supp(p) is not inside supp(q) at orders above one.
    """
    a = as_alpha(alpha)
    check_same_dim(p, q)
    if a.is_zero:
        s = math.fsum(qi for pi, qi in zip(p.weights, q.weights) if pi > 0)
        return _clamp(-math.log(s)) if s > 0 else math.inf
    if a.is_one:
        return _kl(p, q)
    if a.is_pos_inf:
        return _max_log_ratio(p, q)
    if a.is_neg_inf:
        _check_support_negative_alpha(p)
        _check_support_negative_alpha(q)
        return _max_log_ratio(q, p)
    av = a.value
    if av < 0:
        _check_support_negative_alpha(p)
        _check_support_negative_alpha(q)
    ls = _cross_log_sum(p, q, av)
    if math.isinf(ls):
        # +inf: support failure at a > 1; -inf: disjoint supports at a < 1.
        return math.inf
    return _clamp(sgn(av) / (av - 1.0) * ls)


def tsallis_divergence(p: ProbDist, q: ProbDist, alpha: AlphaLike) -> float:
    """Non-additive divergence sgn(a)/(a-1) * (sum p_i^a q_i^(1-a) - 1)."""
    a = as_alpha(alpha)
    check_same_dim(p, q)
    if a.is_zero:
        s = math.fsum(qi for pi, qi in zip(p.weights, q.weights) if pi > 0)
        return _clamp(-(s - 1.0))
    if a.is_one:
        return _kl(p, q)
    if a.is_pos_inf:
        return _max_log_ratio(p, q)
    if a.is_neg_inf:
        _check_support_negative_alpha(p)
        _check_support_negative_alpha(q)
        return _max_log_ratio(q, p)
    av = a.value
    if av < 0:
        _check_support_negative_alpha(p)
        _check_support_negative_alpha(q)
    ls = _cross_log_sum(p, q, av)
    if ls == math.inf:
        return math.inf
    # ls = -inf (disjoint supports, a < 1) falls through: exp(-inf) = 0
    # gives the saturated value 1/(1-a).
    return _clamp(sgn(av) / (av - 1.0) * (math.exp(ls) - 1.0))


def compose_tsallis(dpq: float, drs: float, alpha: AlphaLike) -> float:
    """Pseudo-additive composition dpq + drs + sgn(a)(a-1) dpq drs."""
    a = as_alpha(alpha)
    if not a.is_finite:
        raise DomainError("composition requires a finite order")
    if math.isinf(dpq) or math.isinf(drs):
        raise OverflowToInfinity("cannot compose an infinite divergence")
    av = a.value
    return dpq + drs + sgn(av) * (av - 1.0) * dpq * drs
