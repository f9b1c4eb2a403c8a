"""Numerical toolkit for generalized second laws and catalytic thermodynamics."""

from .core import (
    AlphaValue,
    GibbsContext,
    ProbDist,
    as_alpha,
    gibbs_dist,
    joint_context,
    make_prob_dist,
    tensor,
    uniform,
)
from .divergences import (
    compose_tsallis,
    exp_alpha,
    ln_alpha,
    renyi_divergence,
    renyi_entropy,
    tsallis_divergence,
    tsallis_entropy,
)
from .errors import ThermocatError
from .free_energy import (
    ScanReport,
    WorkBitSpec,
    compose_free_energy,
    default_alpha_grid,
    renyi_free_energy,
    second_law_scan,
    tsallis_free_energy,
    work_bit_feasible,
    work_cost,
    work_distance,
    work_extract,
)
from .majorization import (
    StochasticMatrix,
    ThermoCurve,
    Verdict,
    apply_channel,
    catalytic_relative_majorization,
    dominates,
    embed,
    perturb_full_rank,
    rationalize,
    rationalize_sorted,
    thermal_feasible,
    thermo_curve,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaValue", "GibbsContext", "ProbDist", "ScanReport", "StochasticMatrix",
    "ThermoCurve", "ThermocatError", "Verdict", "WorkBitSpec", "apply_channel",
    "as_alpha", "catalytic_relative_majorization", "compose_free_energy",
    "compose_tsallis", "default_alpha_grid", "dominates", "embed", "exp_alpha",
    "gibbs_dist", "joint_context", "ln_alpha", "make_prob_dist",
    "perturb_full_rank", "rationalize", "rationalize_sorted",
    "renyi_divergence", "renyi_entropy", "renyi_free_energy",
    "second_law_scan", "tensor", "thermal_feasible", "thermo_curve",
    "tsallis_divergence", "tsallis_entropy", "tsallis_free_energy", "uniform",
    "work_bit_feasible", "work_cost", "work_distance", "work_extract",
]
