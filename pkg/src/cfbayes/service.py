"""HTTP facade over the package.

Every endpoint is a stateless POST that carries the full problem in the
request body, so the service can sit behind any number of workers. Error
mapping is part of the contract: malformed inputs (including request
validation failures) answer 400 with the error class name, quantities
that are undefined for the given distribution answer 422. Bodies of both
carry ``{"detail": {"error": <name>, "message": <text>}}``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .audit import TOLERANCE_GRID, AuditConfig, run_audit
from .cf import BeliefMeasures
from .classify import (
    DEFAULT_CLASS_TOLERANCE,
    IndependenceVariant,
    classify,
)
from .consistency import evidence_gap
from .decompose import greedy_decompose
from .errors import ComputationError, InputError
from .model import (
    Event,
    JointDistribution,
    Literal,
    Problem,
    distribution_from_dict,
)
from .oracle import conditional, marginal
from .sampling import sample_distribution


class DistributionPayload(BaseModel):
    attributes: list[str]
    probabilities: list[float]


class ClassificationOut(BaseModel):
    problem_class: str
    variant: str
    ci_gap: float
    marginal_gap: float
    tol: float


class GenerateRequest(BaseModel):
    family: str
    attrs: int
    seed: int = 0


class GenerateResponse(BaseModel):
    attributes: list[str]
    probabilities: list[float]
    hypothesis: str
    classifications: list[ClassificationOut]


class ClassifyRequest(BaseModel):
    distribution: DistributionPayload
    hypothesis: str
    variant: IndependenceVariant = IndependenceVariant.SYMMETRIC
    tol: float = DEFAULT_CLASS_TOLERANCE


class BeliefOut(BaseModel):
    mb: float
    md: float
    cf: float


class CfRequest(BaseModel):
    distribution: DistributionPayload
    hypothesis: str
    evidence: dict[str, bool]


class CfResponse(BaseModel):
    prior: float
    posterior: float
    direct: BeliefOut
    combined: BeliefOut
    m1_gap: float
    m2_gap: float
    cf_gap: float


class AuditRequest(BaseModel):
    families: list[str]
    count: int
    attrs: int
    seed: int = 0
    tolerances: list[float] = Field(default_factory=lambda: list(TOLERANCE_GRID))
    class_tol: float = DEFAULT_CLASS_TOLERANCE
    threads: int = 1


class AuditResponse(BaseModel):
    rows_csv: str
    summary_csv: str
    row_count: int


class DecomposeRequest(BaseModel):
    distribution: DistributionPayload
    hypothesis: str
    tol: float = 1e-9
    max_group_size: int | None = None


class MergeOut(BaseModel):
    merged: list[list[str]]
    score: float
    max_error_after: float


class DecomposeResponse(BaseModel):
    partition: list[list[str]]
    max_error: float
    mean_error: float
    skipped: int
    merges: list[MergeOut]


def _problem(payload: DistributionPayload, hypothesis: str) -> tuple[JointDistribution, Problem]:
    dist = distribution_from_dict(payload.model_dump())
    return dist, Problem.for_hypothesis(dist.space, hypothesis)


def _belief_out(measures: BeliefMeasures) -> BeliefOut:
    return BeliefOut(mb=measures.mb, md=measures.md, cf=measures.cf)


def create_app() -> FastAPI:
    app = FastAPI(title="cfbayes", version="0.1.0")

    @app.exception_handler(InputError)
    async def input_error(_: Request, exc: InputError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"error": type(exc).__name__, "message": str(exc)}},
        )

    @app.exception_handler(ComputationError)
    async def computation_error(_: Request, exc: ComputationError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"detail": {"error": type(exc).__name__, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def request_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"error": "RequestValidation", "message": str(exc)}},
        )

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.post("/generate", response_model=GenerateResponse)
    async def generate(req: GenerateRequest) -> GenerateResponse:
        dist = sample_distribution(req.family, req.attrs, req.seed)
        problem = Problem(dist.space, 0)
        reports = [
            classify(dist, problem, variant) for variant in IndependenceVariant
        ]
        return GenerateResponse(
            attributes=list(dist.space.attribute_names),
            probabilities=[float(p) for p in dist.probs],
            hypothesis=dist.space.attribute_names[0],
            classifications=[
                ClassificationOut(
                    problem_class=r.problem_class.value,
                    variant=r.variant.value,
                    ci_gap=r.ci_gap,
                    marginal_gap=r.marginal_gap,
                    tol=r.tol,
                )
                for r in reports
            ],
        )

    @app.post("/classify", response_model=ClassificationOut)
    async def classify_endpoint(req: ClassifyRequest) -> ClassificationOut:
        dist, problem = _problem(req.distribution, req.hypothesis)
        report = classify(dist, problem, req.variant, req.tol)
        return ClassificationOut(
            problem_class=report.problem_class.value,
            variant=report.variant.value,
            ci_gap=report.ci_gap,
            marginal_gap=report.marginal_gap,
            tol=report.tol,
        )

    @app.post("/cf", response_model=CfResponse)
    async def cf_endpoint(req: CfRequest) -> CfResponse:
        dist, problem = _problem(req.distribution, req.hypothesis)
        literals = tuple(
            Literal(dist.space.index(name), value)
            for name, value in req.evidence.items()
        )
        event = problem.check_evidence_event(Event(tuple(sorted(literals, key=lambda l: l.attr))))
        record = evidence_gap(dist, problem, event)
        return CfResponse(
            prior=marginal(dist, problem.hypothesis_event(True)),
            posterior=conditional(dist, problem.hypothesis_event(True), event),
            direct=_belief_out(record.direct),
            combined=_belief_out(record.combined),
            m1_gap=record.m1_gap,
            m2_gap=record.m2_gap,
            cf_gap=record.cf_gap,
        )

    @app.post("/audit", response_model=AuditResponse)
    async def audit_endpoint(req: AuditRequest) -> AuditResponse:
        config = AuditConfig(
            families=tuple(req.families),
            count=req.count,
            k=req.attrs,
            seed=req.seed,
            tolerances=tuple(req.tolerances),
            class_tol=req.class_tol,
            threads=req.threads,
        )
        report = run_audit(config)
        return AuditResponse(
            rows_csv=report.rows_csv(),
            summary_csv=report.summary_csv(),
            row_count=len(report.rows),
        )

    @app.post("/decompose", response_model=DecomposeResponse)
    async def decompose_endpoint(req: DecomposeRequest) -> DecomposeResponse:
        dist, problem = _problem(req.distribution, req.hypothesis)
        report = greedy_decompose(dist, problem, req.tol, req.max_group_size)
        names = dist.space.attribute_names

        def group_names(group: tuple[int, ...]) -> list[str]:
            return [names[a] for a in group]

        return DecomposeResponse(
            partition=[group_names(g) for g in report.partition.groups],
            max_error=report.max_error,
            mean_error=report.mean_error,
            skipped=report.skipped,
            merges=[
                MergeOut(
                    merged=[group_names(m.merged[0]), group_names(m.merged[1])],
                    score=m.score,
                    max_error_after=m.max_error_after,
                )
                for m in report.merges
            ],
        )

    return app


app = create_app()
