"""Command-line client for the verification service. By default requests
are executed in process through the same handlers the HTTP service uses;
--server sends them to a running instance instead.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage or
parameter error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import EnumerationCapError, ParameterError
from .service.models import (
    AllRequest,
    AllResponse,
    GroupReport,
    GroupRequest,
    OracleOptions,
    SituationModel,
    VerifyRequest,
    VerifyResponse,
)

THEOREM_SCRIPTS = {
    "2.3": "thm2.3-identities",
    "3.1": "thm3.1",
    "3.2": "thm3.2",
    "3.3": "thm3.3",
}
CASE_SCRIPTS = {f"{c}.{i}": f"case{c}.{i}" for c in (1, 2, 3) for i in (1, 2, 3)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noethercheck",
        description="Replay and verify the constructive rationality proofs "
                    "for p-groups with a cyclic subgroup of index p.",
    )
    parser.add_argument("--server", help="base URL of a running service; "
                        "default is in-process execution")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_oracle_flags(p: argparse.ArgumentParser):
        p.add_argument("--oracle-samples", type=int, default=100,
                       help="finite-field samples per verified claim (default 100)")
        p.add_argument("--oracle-min-q", type=int, default=2**20 + 1,
                       help="lower bound for the oracle prime (default 2^20+1)")
        p.add_argument("--no-oracle", action="store_true",
                       help="skip finite-field corroboration")
        p.add_argument("--seed", choices=["deterministic", "entropy"],
                       default="deterministic", help="oracle sampling seed mode")

    def add_format_flag(p: argparse.ArgumentParser):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("-v", "--verbose", action="store_true")

    p_verify = sub.add_parser("verify", help="replay one proof script")
    which = p_verify.add_mutually_exclusive_group(required=True)
    which.add_argument("--theorem", choices=sorted(THEOREM_SCRIPTS),
                       help="replay a numbered theorem")
    which.add_argument("--case", choices=sorted(CASE_SCRIPTS), dest="case_id",
                       help="replay a numbered twisted subcase")
    p_verify.add_argument("--family", choices=["M", "D", "SD", "Q"])
    p_verify.add_argument("--p", type=int)
    p_verify.add_argument("--n", type=int)
    add_oracle_flags(p_verify)
    add_format_flag(p_verify)

    p_group = sub.add_parser("group", help="inspect one group: order, exponent, relations")
    p_group.add_argument("--family", choices=["M", "D", "SD", "Q"], required=True)
    p_group.add_argument("--p", type=int, default=2)
    p_group.add_argument("--n", type=int, required=True)
    add_format_flag(p_group)

    p_all = sub.add_parser("all", help="run every script over a range of n")
    p_all.add_argument("--max-n", type=int, default=5)
    add_oracle_flags(p_all)
    add_format_flag(p_all)

    p_sit = sub.add_parser("situations", help="list the 12 twisted situations")
    add_format_flag(p_sit)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    return parser


def _oracle_options(args) -> OracleOptions:
    return OracleOptions(
        enabled=not args.no_oracle,
        samples=args.oracle_samples,
        min_q=args.oracle_min_q,
        seed_mode=args.seed,
    )


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=3600.0)
    if response.status_code == 422:
        raise ParameterError(str(response.json().get("detail", response.text)))
    response.raise_for_status()
    return response.json()


def _get(server: str, path: str) -> list | dict:
    import httpx

    response = httpx.get(server.rstrip("/") + path, timeout=600.0)
    response.raise_for_status()
    return response.json()


def cmd_verify(args) -> int:
    if args.theorem is not None:
        script = THEOREM_SCRIPTS[args.theorem]
        default_n = {"thm3.1": 3, "thm3.2": 4, "thm3.3": 5}.get(script)
    else:
        script = CASE_SCRIPTS[args.case_id]
        default_n = 4
    n = args.n if args.n is not None else default_n
    req = VerifyRequest(script=script, family=args.family, p=args.p, n=n,
                        oracle=_oracle_options(args))
    if args.server:
        resp = VerifyResponse(**_post(args.server, "/verify", req.model_dump()))
    else:
        from .service.app import handle_verify

        resp = handle_verify(req)
    if args.format == "json":
        print(json.dumps([s.model_dump() for s in resp.report.steps], indent=2))
    else:
        print(f"== {resp.report.script_id} {resp.report.params} ==")
        for s in resp.report.steps:
            oracle = (f"  [oracle {s.oracle_agree}/{s.oracle_trials}]"
                      if s.oracle_trials else "")
            print(f"{s.status:<15} {s.kind:<30} {s.step_id}{oracle}")
            if args.verbose or s.status == "fail":
                print(f"    {s.detail}")
        for note in resp.report.notes:
            print(f"note: {note}")
        print(f"result: {'PASS' if resp.passed else 'FAIL'}")
    return 0 if resp.passed else 1


def cmd_group(args) -> int:
    req = GroupRequest(family=args.family, p=args.p, n=args.n)
    if args.server:
        report = GroupReport(**_post(args.server, "/group", req.model_dump()))
    else:
        from .service.app import handle_group

        report = handle_group(req)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        spec_name = {"M": f"M({report.p}^{report.n})", "Q": f"Q(2^{report.n})"}.get(
            report.family, f"{report.family}(2^{report.n - 1})")
        print(f"group {spec_name}: order {report.order}, exponent {report.exponent}")
        print(f"relations: {'pass' if report.relations_ok else 'FAIL'} "
              f"({report.relations_detail})")
        print("elements by order: "
              + ", ".join(f"{k}: {v}" for k, v in report.order_histogram.items()))
        if report.unique_involution:
            print(f"unique involution: {report.unique_involution}")
    return 0 if report.relations_ok else 1


def cmd_all(args) -> int:
    req = AllRequest(max_n=args.max_n, oracle=_oracle_options(args),
                     include_steps=True)
    if args.server:
        resp = AllResponse(**_post(args.server, "/all", req.model_dump()))
    else:
        from .service.app import handle_all

        resp = handle_all(req)
    if args.format == "json":
        print(json.dumps([row.model_dump() for row in resp.rows], indent=2))
    else:
        width = max(len(r.script_id) for r in resp.rows) + 2
        for row in resp.rows:
            params = " ".join(f"{k}={v}" for k, v in sorted(row.params.items()))
            line = f"{row.status:<8} {row.script_id:<{width}} {params}"
            if row.status == "skipped":
                line += f"  ({row.reason})"
            print(line)
            if row.status == "fail":
                for s in row.steps:
                    if s.status == "fail":
                        print(f"    {s.step_id}: {s.detail}")
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for row in resp.rows:
            counts[row.status] += 1
        print(f"summary: {counts['pass']} pass, {counts['fail']} fail, "
              f"{counts['skipped']} skipped")
    return 0 if resp.passed else 1


def cmd_situations(args) -> int:
    if args.server:
        items = [SituationModel(**d) for d in _get(args.server, "/situations")]
    else:
        from .service.app import handle_situations

        items = handle_situations()
    if args.format == "json":
        print(json.dumps([s.model_dump() for s in items], indent=2))
    else:
        for s in items:
            print(f"{s.family:<3} lambda(zeta) = zeta^({s.a_label}):  {s.script_id}")
        print(f"{len(items)} situations")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    commands = {
        "verify": cmd_verify,
        "group": cmd_group,
        "all": cmd_all,
        "situations": cmd_situations,
        "serve": cmd_serve,
    }
    try:
        return commands[args.command](args)
    except (ParameterError, EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
