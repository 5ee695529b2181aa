"""Script registry and the public run_script entry point, with memoized
delegation so shared targets are verified once per run batch."""
from __future__ import annotations

from typing import Callable

from ..errors import ParameterError
from .model import RunOptions, ScriptReport
from .runner import Runner

Builder = Callable[[Runner, dict, RunOptions], None]
ParamCheck = Callable[[dict], dict]

_REGISTRY: dict[str, tuple[Builder, ParamCheck]] = {}


def register(script_id: str, builder: Builder, param_check: ParamCheck):
    _REGISTRY[script_id] = (builder, param_check)


def script_ids() -> list[str]:
    return sorted(_REGISTRY)


def normalize_params(script_id: str, params: dict) -> dict:
    if script_id not in _REGISTRY:
        raise ParameterError(f"unknown script {script_id!r}; known: {script_ids()}")
    _, param_check = _REGISTRY[script_id]
    return param_check(dict(params))


def run_script(script_id: str, params: dict | None = None,
               options: RunOptions | None = None,
               _memo: dict | None = None) -> ScriptReport:
    """Execute one replay script and return its report. Delegation targets
    are run through the same memo, so a target shared by several scripts is
    verified once."""
    options = options or RunOptions()
    params = normalize_params(script_id, params or {})
    memo: dict = _memo if _memo is not None else {}
    key = (script_id, tuple(sorted(params.items())))
    if key in memo:
        return memo[key]

    def delegate(target_id: str, target_params: dict) -> ScriptReport:
        return run_script(target_id, target_params, options, _memo=memo)

    builder, _ = _REGISTRY[script_id]
    runner = Runner(script_id, params, options, delegate_runner=delegate)
    builder(runner, params, options)
    memo[key] = runner.report
    return runner.report


def _register_all():
    from . import section3, section4

    register("thm2.3-identities", section3.build_thm23_identities, lambda p: {})
    register("thm3.1", section3.build_thm31, section3._check_params_thm31)
    register("thm3.2", section3.build_thm32, section3._check_params_thm32)
    register("thm3.3", section3.build_thm33, section3._check_params_thm33)
    for case_id in section4.CASE_BUILDERS:
        builder, check = section4.CASE_BUILDERS[case_id]
        register(case_id, builder, check)


_register_all()
