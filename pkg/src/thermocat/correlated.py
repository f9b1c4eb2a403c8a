"""Two-qubit system--catalyst scenario with correlated catalyst return.

A qubit system (prepared thermal at beta2, targeted thermal at beta3) and a
qubit catalyst (thermal at beta1, returned with the same marginal) share a
bath at beta_b.  The final joint state ranges over a classically correlated
family cc(chi) and a discordant family qc(lambda) carrying coherence inside
the energy-degenerate middle block.  All states use ground-first ordering
(gg, ge, eg, ee) with Gibbs weights exp(-beta E).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import GibbsContext, ProbDist, gibbs_dist, joint_context, tensor
from .errors import (
    ChiOutOfRange,
    DomainError,
    LambdaOutOfRange,
    TargetUnreachable,
)
from .majorization import ThermoCurve, Verdict, thermal_feasible, thermo_curve

CONVENTION_BANNER = (
    "conventions: ground-first ordering (gg, ge, eg, ee); "
    "Gibbs weights exp(-beta*E); mutual information in bits"
)


@dataclass(frozen=True)
class ScenarioParams:
    """Energies and inverse temperatures of the two-qubit demo."""

    E_g: float = 0.0
    E_e: float = 2.0
    beta1: float = 0.1
    beta2: float = 0.2
    beta3: float = 1.0
    beta_b: float = 2.0

    def __post_init__(self):
        if self.E_e <= self.E_g:
            raise DomainError("excited level must lie above the ground level")
        for b in (self.beta1, self.beta2, self.beta3, self.beta_b):
            if b <= 0:
                raise DomainError("inverse temperatures must be positive")

    def ground_prob(self, beta: float) -> float:
        """Ground-level occupation of a single qubit thermal at beta."""
        return 1.0 / (1.0 + math.exp(-beta * (self.E_e - self.E_g)))

    def qubit_ctx(self, beta: float) -> GibbsContext:
        return GibbsContext((self.E_g, self.E_e), beta)

    def joint_ctx(self) -> GibbsContext:
        return joint_context(self.qubit_ctx(self.beta_b), self.qubit_ctx(self.beta_b))

    def thermal_qubit(self, beta: float) -> ProbDist:
        return gibbs_dist(self.qubit_ctx(beta))


@dataclass(frozen=True)
class JointQubitState:
    """4-level joint state: populations plus one middle-block coherence.

    The two middle levels (ge, eg) are energy-degenerate; coherence couples
    only those, so the marginals depend on the populations alone.
    """

    pops: ProbDist
    coherence: float = 0.0

    def __post_init__(self):
        if self.pops.dim != 4:
            raise DomainError("joint state needs 4 populations")
        a, b = self.pops.weights[1], self.pops.weights[2]
        if self.coherence ** 2 > a * b + 1e-15:
            raise LambdaOutOfRange(
                f"coherence {self.coherence} breaks block positivity "
                f"(limit {math.sqrt(a * b)})"
            )

    def marginal_system(self) -> ProbDist:
        w = self.pops.weights
        return ProbDist((w[0] + w[1], w[2] + w[3]))

    def marginal_catalyst(self) -> ProbDist:
        w = self.pops.weights
        return ProbDist((w[0] + w[2], w[1] + w[3]))


def build_initial_uc(params: ScenarioParams) -> JointQubitState:
    """Uncorrelated initial state thermal(beta2) x thermal(beta1)."""
    sys = params.thermal_qubit(params.beta2)
    cat = params.thermal_qubit(params.beta1)
    return JointQubitState(tensor(sys, cat))


def chi_interval(params: ScenarioParams) -> tuple[float, float]:
    """Open interval of correlation strengths keeping all populations positive."""
    p3 = params.ground_prob(params.beta3)
    p1 = params.ground_prob(params.beta1)
    lo = -(1.0 - p3) * (1.0 - p1)
    hi = min(p3 * (1.0 - p1), (1.0 - p3) * p1)
    return lo, hi


def build_cc(params: ScenarioParams, chi: float) -> JointQubitState:
    """Classically correlated final state: product populations shifted by chi."""
    lo, hi = chi_interval(params)
    if not (lo < chi < hi):
        raise ChiOutOfRange(f"chi {chi} outside ({lo}, {hi})")
    p3 = params.ground_prob(params.beta3)
    p1 = params.ground_prob(params.beta1)
    pops = ProbDist((
        p3 * p1 + chi,
        p3 * (1.0 - p1) - chi,
        (1.0 - p3) * p1 - chi,
        (1.0 - p3) * (1.0 - p1) + chi,
    ))
    return JointQubitState(pops)


def lambda_max(params: ScenarioParams) -> float:
    p3 = params.ground_prob(params.beta3)
    p1 = params.ground_prob(params.beta1)
    return math.sqrt(p3 * (1.0 - p1) * (1.0 - p3) * p1)


def build_qc(params: ScenarioParams, lam: float) -> JointQubitState:
    """Discordant final state: product populations plus block coherence."""
    lm = lambda_max(params)
    if abs(lam) > lm:
        raise LambdaOutOfRange(f"|lambda| {abs(lam)} exceeds {lm}")
    p3 = params.ground_prob(params.beta3)
    p1 = params.ground_prob(params.beta1)
    pops = ProbDist((
        p3 * p1,
        p3 * (1.0 - p1),
        (1.0 - p3) * p1,
        (1.0 - p3) * (1.0 - p1),
    ))
    return JointQubitState(pops, coherence=lam)


def block_spectrum(state: JointQubitState) -> ProbDist:
    """Eigenvalues with the degenerate middle block diagonalized in place."""
    w = state.pops.weights
    a, b = w[1], w[2]
    lam = state.coherence
    if lam == 0.0:
        return state.pops
    mean = 0.5 * (a + b)
    rad = math.sqrt((0.5 * (a - b)) ** 2 + lam ** 2)
    plus = mean + rad
    minus = max(mean - rad, 0.0)
    return ProbDist((w[0], plus, minus, w[3]))


@dataclass(frozen=True)
class MIReport:
    """Marginal and joint entropies (bits) and their mutual information."""

    h_s: float
    h_m: float
    h_joint: float

    @property
    def mutual_info(self) -> float:
        return self.h_s + self.h_m - self.h_joint


def _h_bits(p: ProbDist) -> float:
    return -math.fsum(w * math.log2(w) for w in p.weights if w > 0)


def mutual_information(state: JointQubitState) -> MIReport:
    """Base-2 mutual information between system and catalyst."""
    return MIReport(
        h_s=_h_bits(state.marginal_system()),
        h_m=_h_bits(state.marginal_catalyst()),
        h_joint=_h_bits(block_spectrum(state)),
    )


def joint_verdict(params: ScenarioParams, final_state: JointQubitState) -> Verdict:
    """Thermo-majorization verdict for initial-uc -> final joint transition.

    The degenerate middle block of the final state is diagonalized first:
    its two eigenvalue slots carry equal Gibbs weight, so unitaries inside
    the block are free.
    """
    g = gibbs_dist(params.joint_ctx())
    initial = build_initial_uc(params).pops
    final = block_spectrum(final_state)
    return thermal_feasible(initial, final, g)


def solve_lambda_for_mi(
    params: ScenarioParams, target_mi_bits: float, tol: float = 1e-9
) -> float:
    """Coherence amplitude whose discordant state has the target MI (bits).

    MI grows monotonically with the coherence on [0, lambda_max]; bisection
    with a grid fallback if the pre-scan detects non-monotonicity.
    """
    if target_mi_bits < 0:
        raise TargetUnreachable("mutual information cannot be negative")
    lm = lambda_max(params)

    def mi(lam: float) -> float:
        return mutual_information(build_qc(params, lam)).mutual_info

    top = mi(lm)
    if target_mi_bits > top + tol:
        raise TargetUnreachable(
            f"target {target_mi_bits} above maximum {top} at lambda_max"
        )
    grid = [mi(lm * k / 100.0) for k in range(101)]
    monotone = all(grid[k + 1] >= grid[k] - 1e-12 for k in range(100))
    lo, hi = 0.0, lm
    if not monotone:
        # bracket the first crossing on the grid, then bisect inside it
        for k in range(100):
            if grid[k] <= target_mi_bits <= grid[k + 1]:
                lo, hi = lm * k / 100.0, lm * (k + 1) / 100.0
                break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mi(mid) < target_mi_bits:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    lam = 0.5 * (lo + hi)
    if abs(mi(lam) - target_mi_bits) > max(tol, 1e-9):
        raise TargetUnreachable(f"no admissible coherence reaches {target_mi_bits}")
    return lam


# ---------------------------------------------------------------------------
# Structured report
# ---------------------------------------------------------------------------

def _curve_points(curve: ThermoCurve) -> list[list[float]]:
    return [[x, y] for x, y in curve.breakpoints]


def scenario_report(
    params: ScenarioParams,
    chi_list: Sequence[float] = (),
    lambda_list: Sequence[float] = (),
) -> dict:
    """Populations, marginals, MI, verdicts, and curves for the demo states."""
    g = gibbs_dist(params.joint_ctx())
    initial = build_initial_uc(params)
    states = []
    for chi in chi_list:
        st = build_cc(params, chi)
        states.append(("cc", "chi", chi, st))
    for lam in lambda_list:
        st = build_qc(params, lam)
        states.append(("qc", "lambda", lam, st))

    out_states = []
    for kind, pname, pval, st in states:
        mi = mutual_information(st)
        verdict = joint_verdict(params, st)
        spectrum = block_spectrum(st)
        out_states.append({
            "name": f"{kind}({pname}={pval:.17g})",
            pname: pval,
            "pops": list(st.pops.weights),
            "spectrum": list(spectrum.weights),
            "marginal_system": list(st.marginal_system().weights),
            "marginal_catalyst": list(st.marginal_catalyst().weights),
            "mi_bits": mi.mutual_info,
            "verdict": "allowed" if verdict.allowed else "forbidden",
            "witness": list(verdict.witness) if verdict.witness else None,
            "curve": _curve_points(thermo_curve(spectrum, g)),
        })
    return {
        "banner": CONVENTION_BANNER,
        "params": {
            "E_g": params.E_g, "E_e": params.E_e,
            "beta1": params.beta1, "beta2": params.beta2,
            "beta3": params.beta3, "beta_b": params.beta_b,
        },
        "gibbs_joint": list(g.weights),
        "initial_pops": list(initial.pops.weights),
        "initial_curve": _curve_points(thermo_curve(initial.pops, g)),
        "reference_curve": _curve_points(thermo_curve(g, g)),
        "states": out_states,
    }


def scenario_report_json(
    params: ScenarioParams,
    chi_list: Sequence[float] = (),
    lambda_list: Sequence[float] = (),
) -> str:
    return json.dumps(scenario_report(params, chi_list, lambda_list), indent=2)
