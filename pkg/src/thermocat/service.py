"""HTTP service exposing the toolkit.

Each endpoint is a thin wrapper over a handler function that takes and
returns pydantic models; the CLI calls the same handlers in-process, so the
two front ends cannot drift apart.  Non-finite divergence values are
serialized as the strings "inf" / "-inf" to stay inside strict JSON.
"""

from __future__ import annotations

import math
from typing import Optional, Union

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from . import catalysis, correlated, free_energy
from .core import GibbsContext, ProbDist, as_alpha, make_prob_dist
from .divergences import renyi_divergence, tsallis_divergence
from .errors import ThermocatError
from .free_energy import default_alpha_grid, second_law_scan
from .majorization import thermo_curve

JsonNumber = Union[float, str]


def _enc(v: float) -> JsonNumber:
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    return v


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

class DivergenceRequest(BaseModel):
    p: list[float]
    q: list[float]
    alphas: Optional[list[str]] = None


class DivergenceResponse(BaseModel):
    alphas: list[str]
    renyi: list[JsonNumber]
    tsallis: list[JsonNumber]


class ScanRequest(BaseModel):
    p: list[float]
    p_prime: list[float]
    energies: list[float]
    beta: float = Field(gt=0)
    grid: Optional[list[str]] = None


class FirstViolation(BaseModel):
    alpha: str
    delta: JsonNumber


class ScanResponse(BaseModel):
    grid: list[str]
    deltas_renyi: list[JsonNumber]
    deltas_tsallis: list[JsonNumber]
    deltas_renyi_raw: list[JsonNumber]
    deltas_tsallis_raw: list[JsonNumber]
    allowed: bool
    first_violation: Optional[FirstViolation] = None


class CurveRequest(BaseModel):
    p: list[float]
    g: Optional[list[float]] = None
    energies: Optional[list[float]] = None
    beta: Optional[float] = None


class SweepRequest(BaseModel):
    kinds: list[str] = ["distributed", "concentrated"]
    d_values: list[int] = [4, 8, 16]
    eps_values: list[float] = [0.001]
    alphas: list[float] = [0.5, 2.0, 3.0]
    p_sys: Optional[list[float]] = None
    p_sys_prime: Optional[list[float]] = None
    energies: list[float] = [0.0, 2.0]
    beta: float = 2.0


class CorrelatedRequest(BaseModel):
    E_g: float = 0.0
    E_e: float = 2.0
    beta1: float = 0.1
    beta2: float = 0.2
    beta3: float = 1.0
    beta_b: float = 2.0
    chi_list: list[float] = [0.05, 0.065]
    lambda_list: list[float] = [0.0947]


# ---------------------------------------------------------------------------
# Handlers (shared with the CLI)
# ---------------------------------------------------------------------------

def handle_divergence(req: DivergenceRequest) -> DivergenceResponse:
    p = make_prob_dist(req.p)
    q = make_prob_dist(req.q)
    grid = [as_alpha(a) for a in req.alphas] if req.alphas else default_alpha_grid()
    return DivergenceResponse(
        alphas=[str(a) for a in grid],
        renyi=[_enc(renyi_divergence(p, q, a)) for a in grid],
        tsallis=[_enc(tsallis_divergence(p, q, a)) for a in grid],
    )


def handle_scan(req: ScanRequest) -> ScanResponse:
    p = make_prob_dist(req.p)
    pp = make_prob_dist(req.p_prime)
    ctx = GibbsContext(tuple(req.energies), req.beta)
    grid = [as_alpha(a) for a in req.grid] if req.grid else None
    rep = second_law_scan(p, pp, ctx, grid)
    fv = None
    if rep.first_violation is not None:
        fv = FirstViolation(
            alpha=str(rep.first_violation[0]), delta=_enc(rep.first_violation[1])
        )
    return ScanResponse(
        grid=[str(a) for a in rep.grid],
        deltas_renyi=[_enc(v) for v in rep.deltas_renyi],
        deltas_tsallis=[_enc(v) for v in rep.deltas_tsallis],
        deltas_renyi_raw=[_enc(v) for v in rep.deltas_renyi_raw],
        deltas_tsallis_raw=[_enc(v) for v in rep.deltas_tsallis_raw],
        allowed=rep.allowed,
        first_violation=fv,
    )


def handle_curve(req: CurveRequest) -> str:
    p = make_prob_dist(req.p)
    if req.g is not None:
        g = make_prob_dist(req.g)
    elif req.energies is not None and req.beta is not None:
        from .core import gibbs_dist
        g = gibbs_dist(GibbsContext(tuple(req.energies), req.beta))
    else:
        raise ThermocatError("provide either g or (energies, beta)")
    return thermo_curve(p, g).to_csv()


def handle_sweep(req: SweepRequest) -> str:
    ctx = GibbsContext(tuple(req.energies), req.beta)
    defaults = correlated.ScenarioParams()
    if req.p_sys is not None:
        p_sys = make_prob_dist(req.p_sys)
    else:
        p_sys = defaults.thermal_qubit(defaults.beta2)
    if req.p_sys_prime is not None:
        pp_sys = make_prob_dist(req.p_sys_prime)
    else:
        pp_sys = defaults.thermal_qubit(defaults.beta3)
    return catalysis.sweep(
        req.kinds, req.d_values, req.eps_values, req.alphas, p_sys, pp_sys, ctx
    )


def handle_correlated(req: CorrelatedRequest) -> dict:
    params = correlated.ScenarioParams(
        E_g=req.E_g, E_e=req.E_e,
        beta1=req.beta1, beta2=req.beta2,
        beta3=req.beta3, beta_b=req.beta_b,
    )
    return correlated.scenario_report(params, req.chi_list, req.lambda_list)


# ---------------------------------------------------------------------------
# FastAPI app
# ---------------------------------------------------------------------------

app = FastAPI(title="thermocat", version="0.1.0")


def _wrap(fn, *args):
    try:
        return fn(*args)
    except ThermocatError as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}")


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/divergence", response_model=DivergenceResponse)
def divergence_endpoint(req: DivergenceRequest) -> DivergenceResponse:
    return _wrap(handle_divergence, req)


@app.post("/scan", response_model=ScanResponse)
def scan_endpoint(req: ScanRequest) -> ScanResponse:
    return _wrap(handle_scan, req)


@app.post("/curve", response_class=PlainTextResponse)
def curve_endpoint(req: CurveRequest) -> str:
    return _wrap(handle_curve, req)


@app.post("/catalysis-sweep", response_class=PlainTextResponse)
def sweep_endpoint(req: SweepRequest) -> str:
    return _wrap(handle_sweep, req)


@app.post("/correlated-demo")
def correlated_endpoint(req: CorrelatedRequest) -> dict:
    return _wrap(handle_correlated, req)
