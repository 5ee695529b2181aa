"""Execution engine for the replay scripts: verifies claimed actions,
field-equality certificates and theorem hypotheses step by step, with
optional finite-field corroboration, and assembles a report.

A script proceeds through stages: each stage is a rational function field
with a set of verified automorphisms. New generators are defined as
expressions over the current stage; once their claimed action tables are
verified symbolically in the current stage, the script re-roots so the new
generators become free variables carrying the verified tables. Every
re-rooting is backed by a certificate (unimodular exponent matrix, explicit
inverse formulas, or an invariant-lattice basis for a diagonal action).
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from math import gcd

from ..actions import (
    FieldAutomorphism,
    GroupAction,
    check_affine_form,
    check_affine_single,
    check_faithful,
    check_relations,
    verify_theorem_2_3,
    verify_theorem_2_3_hypotheses,
)
from ..cyclotomic import CycElem
from ..errors import OracleError
from ..lattice import (
    integer_inverse,
    invariant_exponent_lattice,
    is_unimodular,
    lattice_contains,
    lattice_index,
    determinant,
)
from ..oracle import PrimeField, find_prime_with_root, sample_check
from ..ratfield import FuncField, RatFunc
from ..verdict import Verdict
from .model import RunOptions, ScriptReport, StepKind, StepReport, StepStatus


@dataclass
class Stage:
    ff: FuncField
    autos: dict[str, FieldAutomorphism]

    def auto(self, name: str) -> FieldAutomorphism:
        return self.autos[name]


class Runner:
    """Recorder/verifier handed to each script builder."""

    def __init__(self, script_id: str, params: dict, options: RunOptions,
                 delegate_runner=None):
        self.script_id = script_id
        self.options = options
        self.report = ScriptReport(script_id=script_id, params=dict(params))
        self.stage: Stage | None = None
        self._prime_fields: dict[int, PrimeField] = {}
        self._delegate_runner = delegate_runner

    # -- plumbing ------------------------------------------------------------

    def _rng(self, step_id: str) -> random.Random:
        if self.options.deterministic:
            digest = hashlib.sha256(f"{self.script_id}|{step_id}".encode()).digest()
            return random.Random(int.from_bytes(digest[:8], "big"))
        return random.Random()

    def _prime_field(self, m: int) -> PrimeField:
        pf = self._prime_fields.get(m)
        if pf is None:
            pf = find_prime_with_root(m, self.options.min_q)
            self._prime_fields[m] = pf
        return pf

    def _record(self, step: StepReport) -> StepReport:
        self.report.steps.append(step)
        return step

    def note(self, text: str):
        self.report.notes.append(text)

    def set_stage(self, ff: FuncField, autos: dict[str, FieldAutomorphism]) -> Stage:
        self.stage = Stage(ff, dict(autos))
        return self.stage

    # -- recorded steps --------------------------------------------------------

    def define_vars(self, step_id: str, names: list[str], detail: str = "",
                    ok: bool = True) -> StepReport:
        status = StepStatus.PASS if ok else StepStatus.FAIL
        return self._record(StepReport(step_id, StepKind.DEFINE_VARS, status,
                                       detail or f"defined {', '.join(names)}"))

    def check(self, step_id: str, verdict: Verdict, kind: str = StepKind.CLAIM_ACTION) -> StepReport:
        status = StepStatus.PASS if verdict.ok else StepStatus.FAIL
        return self._record(StepReport(step_id, kind, status, verdict.detail))

    def _oracle(self, step_id: str, lhs: RatFunc, rhs: RatFunc) -> tuple[int | None, int | None, str]:
        if not self.options.oracle:
            return None, None, ""
        pf = self._prime_field(lhs.field.m)
        try:
            result = sample_check(lhs, rhs, pf, self.options.samples, self._rng(step_id))
        except OracleError as exc:
            return 0, self.options.samples, f"; oracle error: {exc}"
        extra = "" if result.ok else f"; ORACLE REFUTED: {result.detail}"
        return result.agree, result.trials, extra

    def claim(self, step_id: str, auto: FieldAutomorphism, subject: RatFunc,
              claimed: RatFunc, corrected: RatFunc | None = None,
              label: str = "") -> StepReport:
        """Verify auto(subject) = claimed exactly; when a corrected variant
        is supplied, both the printed and the corrected forms are tested and
        reported, and the step passes if either does."""
        applied = auto.apply(subject)
        ok_printed = applied.equals(claimed)
        detail = label + (": " if label else "")
        good: RatFunc | None = claimed if ok_printed else None
        if corrected is None:
            detail += "verified" if ok_printed else (
                f"image is {applied.canonical_str()}, claimed {claimed.canonical_str()}"
            )
            ok = ok_printed
        else:
            ok_corr = applied.equals(corrected)
            if good is None and ok_corr:
                good = corrected
            detail += (
                f"as printed: {'pass' if ok_printed else 'fail'}; "
                f"corrected ({corrected.canonical_str()}): {'pass' if ok_corr else 'fail'}"
            )
            ok = ok_printed or ok_corr
        agree = trials = None
        if ok and good is not None:
            agree, trials, extra = self._oracle(step_id, applied, good)
            if extra.startswith("; ORACLE REFUTED"):
                ok = False
            detail += extra
        status = StepStatus.PASS if ok else StepStatus.FAIL
        return self._record(StepReport(step_id, StepKind.CLAIM_ACTION, status, detail,
                                       agree, trials))

    def claim_zeta(self, step_id: str, auto: FieldAutomorphism, exponent: int) -> StepReport:
        """Verify the coefficient action: auto(zeta) = zeta^exponent."""
        ff = auto.ff
        applied = auto.apply(ff.zeta())
        claimed = ff.zeta(exponent)
        ok = applied.equals(claimed)
        detail = (
            f"{auto.name}(zeta) = zeta^{exponent % ff.field.m}"
            if ok
            else f"{auto.name}(zeta) = {applied.canonical_str()}, claimed zeta^{exponent}"
        )
        return self._record(StepReport(step_id, StepKind.CLAIM_ACTION,
                                       StepStatus.PASS if ok else StepStatus.FAIL, detail))

    def identity_claim(self, step_id: str, lhs: RatFunc, rhs: RatFunc,
                       label: str = "") -> StepReport:
        ok = lhs.equals(rhs)
        detail = label + (": " if label else "")
        detail += "identity holds" if ok else (
            f"lhs {lhs.canonical_str()} != rhs {rhs.canonical_str()}"
        )
        agree = trials = None
        if ok:
            agree, trials, extra = self._oracle(step_id, lhs, rhs)
            if extra.startswith("; ORACLE REFUTED"):
                ok = False
            detail += extra
        return self._record(StepReport(step_id, StepKind.CLAIM_ACTION,
                                       StepStatus.PASS if ok else StepStatus.FAIL, detail,
                                       agree, trials))

    # -- field-equality certificates -------------------------------------------

    def monomial_field_equality(self, step_id: str, defs: dict[str, RatFunc]) -> tuple[StepReport, list[list[int]]]:
        """Certify K(old vars) = K(new defs) for monomial definitions: the
        exponent matrix must be unimodular, and substituting the definitions
        into the inverse-matrix monomials must return every old variable."""
        ff = self.stage.ff
        nvars = ff.space.nvars
        rows, scalars, names = [], [], []
        for name, expr in defs.items():
            expr = expr.normalized()
            if not expr.is_monomial():
                report = self._record(StepReport(
                    step_id, StepKind.MONOMIAL_FIELD_EQUALITY, StepStatus.FAIL,
                    f"definition of {name} is not a monomial"))
                return report, []
            c, e = expr.monomial_parts()
            if c.is_zero():
                report = self._record(StepReport(
                    step_id, StepKind.MONOMIAL_FIELD_EQUALITY, StepStatus.FAIL,
                    f"definition of {name} has zero coefficient"))
                return report, []
            rows.append(list(e))
            scalars.append(c)
            names.append(name)
        if len(rows) != nvars:
            report = self._record(StepReport(
                step_id, StepKind.MONOMIAL_FIELD_EQUALITY, StepStatus.FAIL,
                f"{len(rows)} definitions for {nvars} variables"))
            return report, rows
        det = determinant(rows)
        if det not in (1, -1):
            report = self._record(StepReport(
                step_id, StepKind.MONOMIAL_FIELD_EQUALITY, StepStatus.FAIL,
                f"exponent matrix has determinant {det}, not unimodular"))
            return report, rows
        # round trip: old_i = prod_j (new_j / scalar_j)^(inv[i][j])
        inv = integer_inverse(rows)
        new_ff = FuncField.make(names, ff.field)
        images = {names[j]: defs[names[j]] for j in range(nvars)}
        ok_round = True
        for i, old_name in enumerate(ff.space.names):
            expr = new_ff.one()
            for j in range(nvars):
                if inv[i][j]:
                    expr = expr * (new_ff.var(names[j]) / new_ff.const(scalars[j])) ** inv[i][j]
            back = expr.substitute(images)
            if not back.equals(ff.var(old_name)):
                ok_round = False
                break
        detail = (
            f"exponent matrix unimodular (det {det}); inverse substitution returns "
            f"all {nvars} generators"
            if ok_round
            else "inverse substitution failed to recover the old generators"
        )
        status = StepStatus.PASS if ok_round else StepStatus.FAIL
        report = self._record(StepReport(step_id, StepKind.MONOMIAL_FIELD_EQUALITY,
                                         status, detail))
        return report, rows

    def monomial_equality_derived(self, step_id: str, base: dict[str, RatFunc],
                                  new: dict[str, tuple[RatFunc, dict[str, int]]],
                                  extra_scalars: dict[str, CycElem] | None = None) -> StepReport:
        """Certify K(base gens) = K(new gens) where each new generator is
        given both as an expression and as scalar * monomial in the base
        generators; checks the expression match and unimodularity."""
        extra_scalars = extra_scalars or {}
        base_names = list(base)
        rows = []
        for name, (expr, exps) in new.items():
            mono = self.stage.ff.one()
            scalar = extra_scalars.get(name)
            if scalar is not None:
                mono = mono * self.stage.ff.const(scalar)
            for bname, e in exps.items():
                if e:
                    mono = mono * base[bname] ** e
            if not expr.equals(mono):
                return self._record(StepReport(
                    step_id, StepKind.MONOMIAL_FIELD_EQUALITY, StepStatus.FAIL,
                    f"{name} does not match its monomial form in {base_names}"))
            rows.append([exps.get(bname, 0) for bname in base_names])
        if len(rows) != len(base_names):
            return self._record(StepReport(
                step_id, StepKind.MONOMIAL_FIELD_EQUALITY, StepStatus.FAIL,
                f"{len(rows)} new generators for {len(base_names)} base generators"))
        det = determinant(rows)
        ok = det in (1, -1)
        detail = (
            f"monomial change of generators {base_names} -> {list(new)} unimodular (det {det})"
            if ok else f"exponent matrix over {base_names} has determinant {det}"
        )
        return self._record(StepReport(step_id, StepKind.MONOMIAL_FIELD_EQUALITY,
                                       StepStatus.PASS if ok else StepStatus.FAIL, detail))

    def explicit_inverse_equality(self, step_id: str, defs: dict[str, RatFunc],
                                  inverses: dict[str, RatFunc],
                                  relation: tuple[RatFunc, RatFunc] | None = None,
                                  targets: dict[str, RatFunc] | None = None) -> StepReport:
        """Certify K(old gens) = K(new defs) by substituting the definitions
        into supplied back-substitution formulas (written over the new
        variables) and recovering each old generator exactly; `relation`
        optionally records an identity among the new definitions. The old
        generators default to the stage variables; `targets` overrides them
        with derived expressions."""
        ff = self.stage.ff
        images = dict(defs)
        failures = []
        for old_name, formula in inverses.items():
            back = formula.substitute(images)
            target = targets[old_name] if targets is not None else ff.var(old_name)
            if not back.equals(target):
                failures.append(old_name)
        detail_parts = []
        ok = not failures
        if relation is not None:
            rel_ok = relation[0].equals(relation[1])
            ok = ok and rel_ok
            detail_parts.append(
                "stated relation holds" if rel_ok else "stated relation FAILS"
            )
        detail_parts.append(
            f"back-substitution recovers {sorted(inverses)}"
            if not failures
            else f"back-substitution fails for {failures}"
        )
        return self._record(StepReport(step_id, StepKind.EXPLICIT_INVERSE_FIELD_EQUALITY,
                                       StepStatus.PASS if ok else StepStatus.FAIL,
                                       "; ".join(detail_parts)))

    def fixedness(self, step_id: str, auto: FieldAutomorphism,
                  defs: dict[str, RatFunc]) -> StepReport:
        """Certify that `auto` acts diagonally by roots of unity on the stage
        variables and that the monomial definitions generate the full fixed
        field: each definition is fixed, its exponent row lies in the
        invariant lattice, and the rows span a sublattice of the exact index."""
        ff = self.stage.ff
        m = ff.field.m
        weights = []
        for name in ff.space.names:
            img = auto.images[name].normalized()
            if not img.is_monomial():
                return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                               StepStatus.FAIL,
                                               f"action on {name} is not monomial"))
            c, e = img.monomial_parts()
            expected = [0] * ff.space.nvars
            expected[ff.space.index(name)] = 1
            if list(e) != expected:
                return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                               StepStatus.FAIL,
                                               f"action on {name} is not diagonal"))
            w = next((k for k in range(m) if c == ff.field.zeta(k)), None)
            if w is None:
                return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                               StepStatus.FAIL,
                                               f"scalar on {name} is not a power of zeta"))
            weights.append(w)
        rows = []
        for name, expr in defs.items():
            if not auto.apply(expr).equals(expr):
                return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                               StepStatus.FAIL,
                                               f"{name} is not fixed by {auto.name}"))
            expr_n = expr.normalized()
            if not expr_n.is_monomial():
                return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                               StepStatus.FAIL,
                                               f"{name} is not a monomial"))
            _, e = expr_n.monomial_parts()
            rows.append(list(e))
        lattice = invariant_exponent_lattice(weights, m)
        for row, name in zip(rows, defs):
            if not lattice_contains(lattice, row):
                return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                               StepStatus.FAIL,
                                               f"{name} is outside the invariant lattice"))
        expected_index = m // gcd(m, *(weights or [0]))
        got_index = lattice_index(rows)
        ok = got_index == expected_index == lattice_index(lattice)
        detail = (
            f"diagonal weights {weights} mod {m}; definitions span the invariant "
            f"lattice (index {got_index})"
            if ok
            else f"index mismatch: definitions give {got_index}, invariant lattice has "
                 f"{lattice_index(lattice)}, expected {expected_index}"
        )
        return self._record(StepReport(step_id, StepKind.FIXEDNESS_CLAIM,
                                       StepStatus.PASS if ok else StepStatus.FAIL, detail))

    # -- theorem reductions ------------------------------------------------------

    def reduction_affine(self, step_id: str, action: GroupAction,
                         subset: list[str]) -> StepReport:
        relations = check_relations(action)
        faithful = check_faithful(action, subset) if relations.ok else Verdict.failed("skipped")
        affine, _ = check_affine_form(action, subset) if relations.ok else (Verdict.failed("skipped"), {})
        verdict = relations & faithful & affine
        status = StepStatus.HYPOTHESIS_ONLY if verdict.ok else StepStatus.FAIL
        detail = (
            f"affine-reduction hypotheses verified on {subset}; conclusion "
            f"(invariant complements exist) taken as certified reduction. {verdict.detail}"
            if verdict.ok else verdict.detail
        )
        return self._record(StepReport(step_id, StepKind.THEOREM_REDUCTION, status, detail))

    def reduction_single_variable(self, step_id: str, autos: list[FieldAutomorphism],
                                  var: str) -> StepReport:
        details = []
        ok = True
        for auto in autos:
            verdict, parts = check_affine_single(auto, var)
            if not verdict.ok:
                ok = False
                details.append(verdict.detail)
                break
            a, b = parts
            details.append(
                f"{auto.name}({var}) = ({a.canonical_str()})*{var} + ({b.canonical_str()})"
            )
        status = StepStatus.HYPOTHESIS_ONLY if ok else StepStatus.FAIL
        detail = (
            f"one-variable affine hypotheses hold; {var} eliminated: " + "; ".join(details)
            if ok else "; ".join(details)
        )
        return self._record(StepReport(step_id, StepKind.THEOREM_REDUCTION, status, detail))

    def reduction_involution(self, step_id: str, x: RatFunc, y: RatFunc,
                             a: RatFunc, b: RatFunc,
                             involution: FieldAutomorphism,
                             label: str = "", full: bool = True) -> StepReport:
        """Degree-two descent instance. With full=True the whole certificate
        is re-verified on the instance; with full=False only the hypotheses
        are checked and the conclusion is cited from the generic certificate
        (appropriate when a, b are themselves large derived fractions)."""
        if full:
            verdict = verify_theorem_2_3(x, y, a, b, involution)
        else:
            verdict = verify_theorem_2_3_hypotheses(x, y, a, b, involution)
        status = StepStatus.HYPOTHESIS_ONLY if verdict.ok else StepStatus.FAIL
        detail = (label + ": " if label else "") + verdict.detail
        if verdict.ok and not full:
            detail += "; conclusion cited from the generic certificate"
        return self._record(StepReport(step_id, StepKind.THEOREM_REDUCTION, status, detail))

    def relabel(self, step_id: str, mapping: dict[str, str]) -> StepReport:
        pairs = ", ".join(f"{new} = {old}" for new, old in mapping.items())
        return self._record(StepReport(step_id, StepKind.RELABEL, StepStatus.PASS, pairs))

    def delegate(self, step_id: str, target: str, params: dict | None = None,
                 external: str | None = None, detail: str = "") -> StepReport:
        if external is not None:
            self.report.delegations.append((target, {}, True))
            return self._record(StepReport(
                step_id, StepKind.DELEGATE, StepStatus.DELEGATED,
                f"{detail + '; ' if detail else ''}delegated to external result: {external} "
                "(verification out of scope)"))
        if self._delegate_runner is None:
            raise RuntimeError("no delegate runner configured")
        sub = self._delegate_runner(target, params or {})
        self.report.delegations.append((target, dict(params or {}), sub.passed))
        status = StepStatus.DELEGATED if sub.passed else StepStatus.FAIL
        return self._record(StepReport(
            step_id, StepKind.DELEGATE, status,
            f"{detail + '; ' if detail else ''}target {target} {params} "
            f"{'passed' if sub.passed else 'FAILED'} ({len(sub.steps)} steps)"))

    # -- stage transitions ---------------------------------------------------------

    def verify_table(self, step_prefix: str, auto: FieldAutomorphism,
                     table: dict[str, RatFunc], defs: dict[str, RatFunc],
                     corrected: dict[str, RatFunc] | None = None) -> bool:
        """Verify a claimed action table: for each new generator v,
        auto(defs[v]) must equal table[v] expanded through the definitions.
        The table is written over the new variables; `defs` maps new
        variable names to their current-stage expressions."""
        corrected = corrected or {}
        all_ok = True
        for v, formula in table.items():
            claimed = formula.substitute(defs, coeff_map=None)
            corr = corrected.get(v)
            corr_exp = corr.substitute(defs) if corr is not None else None
            step = self.claim(f"{step_prefix}:{auto.name}({v})", auto, defs[v],
                              claimed, corrected=corr_exp,
                              label=f"{auto.name}({v}) = {formula.canonical_str()}")
            all_ok = all_ok and step.ok
        return all_ok

    def advance_stage(self, new_ff: FuncField,
                      tables: dict[str, tuple[dict[str, RatFunc], int]]) -> Stage:
        """Re-root: the new generators become free variables; each automorphism
        is rebuilt from its (already verified) claimed table and coefficient
        exponent."""
        autos = {
            name: FieldAutomorphism.make(new_ff, images, coeff_exp=exp, name=name)
            for name, (images, exp) in tables.items()
        }
        return self.set_stage(new_ff, autos)

    def snapshot_tables(self, key: str, tables: dict[str, dict[str, RatFunc]]):
        """Record canonical action-table strings (used for the claim that the
        tables do not depend on n)."""
        self.report.snapshots[key] = {
            auto_name: {v: f.canonical_str() for v, f in tbl.items()}
            for auto_name, tbl in tables.items()
        }
