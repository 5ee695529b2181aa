"""Verification service: handler functions wrapping the replay engine and
the groups module, plus the FastAPI application. The CLI calls the handlers
in process by default and over HTTP when pointed at a server."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

from ..errors import EnumerationCapError, ParameterError
from ..groups import (
    GroupSpec,
    elements_by_order,
    group_exponent,
    involutions,
    verify_presentation,
)
from ..replay.model import RunOptions, ScriptReport
from ..replay.registry import normalize_params, run_script, script_ids
from ..replay.section4 import enumerate_situations
from .models import (
    AllRequest,
    AllResponse,
    GroupReport,
    GroupRequest,
    OracleOptions,
    ScriptReportModel,
    SituationModel,
    StepReportModel,
    SummaryRow,
    VerifyRequest,
    VerifyResponse,
)

ENV_MIN_Q = "NOETHERCHECK_ORACLE_MIN_Q"
ENV_WORKERS = "NOETHERCHECK_WORKERS"


def run_options(oracle: OracleOptions) -> RunOptions:
    min_q = int(os.environ.get(ENV_MIN_Q, oracle.min_q))
    return RunOptions(
        oracle=oracle.enabled,
        samples=oracle.samples,
        min_q=min_q,
        deterministic=(oracle.seed_mode == "deterministic"),
    )


def _report_model(report: ScriptReport) -> ScriptReportModel:
    return ScriptReportModel(
        script_id=report.script_id,
        params=report.params,
        passed=report.passed,
        steps=[StepReportModel(**s.as_dict()) for s in report.steps],
        notes=list(report.notes),
    )


def script_params(req: VerifyRequest) -> dict:
    params: dict = {}
    if req.family is not None:
        params["family"] = req.family
    if req.p is not None:
        params["p"] = req.p
    if req.n is not None:
        params["n"] = req.n
    return params


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    params = script_params(req)
    report = run_script(req.script, params, run_options(req.oracle))
    return VerifyResponse(passed=report.passed, report=_report_model(report))


def handle_group(req: GroupRequest) -> GroupReport:
    spec = GroupSpec(req.family, req.p, req.n)
    verdict = verify_presentation(spec)
    histogram = {str(k): v for k, v in sorted(elements_by_order(spec).items())}
    unique_inv = None
    invs = involutions(spec)
    if spec.family == "Q" and len(invs) == 1:
        g = invs[0]
        unique_inv = f"sigma^{g.i}" + (f" tau^{g.j}" if g.j else "")
    return GroupReport(
        family=spec.family, p=spec.p, n=spec.n,
        order=spec.order,
        exponent=group_exponent(spec),
        relations_ok=verdict.ok,
        relations_detail=verdict.detail,
        order_histogram=histogram,
        unique_involution=unique_inv,
    )


def handle_situations() -> list[SituationModel]:
    return [
        SituationModel(family=s.family, a_label=s.a_label, script_id=s.script_id)
        for s in enumerate_situations()
    ]


# -- the full sweep -----------------------------------------------------------


def build_all_plan(max_n: int) -> tuple[list[tuple[str, dict]], list[SummaryRow]]:
    """Jobs (script_id, params) plus skipped rows with reasons, for the
    configured upper bound on n."""
    jobs: list[tuple[str, dict]] = [("thm2.3-identities", {})]
    skips: list[SummaryRow] = []

    odd_pn = [(3, 3), (3, 4), (5, 3)]
    for n in range(3, max_n + 1):
        jobs.append(("thm3.1", {"p": 2, "n": n}))
    for p, n in odd_pn:
        if n <= max_n:
            jobs.append(("thm3.1", {"p": p, "n": n}))
    for family in ("D", "Q"):
        for n in range(4, max_n + 1):
            jobs.append(("thm3.2", {"family": family, "n": n}))
    if max_n < 4:
        skips.append(SummaryRow(script_id="thm3.2", params={"max_n": max_n},
                                status="skipped", reason="requires n >= 4"))
    for n in range(5, max_n + 1):
        jobs.append(("thm3.3", {"n": n}))
    if max_n >= 4:
        skips.append(SummaryRow(
            script_id="thm3.3", params={"n": 4}, status="skipped",
            reason="order-16 quasi-dihedral case is an external base case; "
                   "the chain assumes n >= 5"))
    for n in range(4, max_n + 1):
        for sit in enumerate_situations():
            jobs.append((sit.script_id, {"family": sit.family, "n": n}))
    if max_n < 4:
        skips.append(SummaryRow(
            script_id="situations", params={"max_n": max_n}, status="skipped",
            reason="the twisted situations require n >= 4"))
    return jobs, skips


def build_group_plan(max_n: int) -> list[GroupRequest]:
    reqs = []
    for n in range(3, max_n + 1):
        reqs.append(GroupRequest(family="M", p=2, n=n))
        reqs.append(GroupRequest(family="Q", p=2, n=n))
    for n in range(4, max_n + 1):
        reqs.append(GroupRequest(family="D", p=2, n=n))
        reqs.append(GroupRequest(family="SD", p=2, n=n))
    for p, n in [(3, 3), (3, 4), (5, 3)]:
        if n <= max_n:
            reqs.append(GroupRequest(family="M", p=p, n=n))
    return reqs


def _run_job(args: tuple[str, dict, dict]) -> dict:
    script_id, params, opt_dict = args
    report = run_script(script_id, params, RunOptions(**opt_dict))
    return {
        "script_id": report.script_id,
        "params": report.params,
        "passed": report.passed,
        "steps": [s.as_dict() for s in report.steps],
    }


def handle_all(req: AllRequest) -> AllResponse:
    options = run_options(req.oracle)
    jobs, rows = build_all_plan(req.max_n)

    for greq in build_group_plan(req.max_n):
        try:
            greport = handle_group(greq)
            status = "pass" if greport.relations_ok else "fail"
            reason = greport.relations_detail
        except (ParameterError, EnumerationCapError) as exc:
            status, reason = "skipped", str(exc)
        rows.append(SummaryRow(
            script_id="group",
            params={"family": greq.family, "p": greq.p, "n": greq.n},
            status=status, reason=reason))

    workers = int(os.environ.get(ENV_WORKERS, "1"))
    opt_dict = {
        "oracle": options.oracle, "samples": options.samples,
        "min_q": options.min_q, "deterministic": options.deterministic,
    }
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, [(s, p, opt_dict) for s, p in jobs]))
    else:
        memo: dict = {}
        results = []
        for script_id, params in jobs:
            report = run_script(script_id, params, options, _memo=memo)
            results.append({
                "script_id": report.script_id,
                "params": report.params,
                "passed": report.passed,
                "steps": [s.as_dict() for s in report.steps],
            })

    for res in results:
        rows.append(SummaryRow(
            script_id=res["script_id"], params=res["params"],
            status="pass" if res["passed"] else "fail",
            steps=[StepReportModel(**s) for s in res["steps"]] if req.include_steps else [],
        ))
    rows.sort(key=lambda r: (r.script_id, sorted(r.params.items())))
    passed = all(r.status != "fail" for r in rows)
    return AllResponse(passed=passed, rows=rows)


def create_app():
    from fastapi import FastAPI, HTTPException

    app = FastAPI(
        title="noethercheck",
        description="Mechanical verification of rationality constructions "
                    "for p-group actions on rational function fields",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "scripts": script_ids()}

    @app.get("/situations", response_model=list[SituationModel])
    def situations() -> list[SituationModel]:
        return handle_situations()

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        try:
            normalize_params(req.script, script_params(req))
        except ParameterError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return handle_verify(req)

    @app.post("/group", response_model=GroupReport)
    def group(req: GroupRequest) -> GroupReport:
        try:
            return handle_group(req)
        except (ParameterError, EnumerationCapError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/all", response_model=AllResponse)
    def run_all(req: AllRequest) -> AllResponse:
        return handle_all(req)

    return app
