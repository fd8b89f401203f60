"""Command-line front end.

Subcommands: classify-quadratic, analyze, verify {t1|t2|t3}, scan, table,
pollack, contrast.  Output formats: text (default), json (one compact object
per line), csv (one flat row per report, nested values JSON-encoded).  Unit
coefficients are serialized as decimal strings since they routinely exceed 64
bits.  Identical inputs and budgets produce byte-identical output regardless
of --jobs.

Exit codes: 0 ok, 2 usage error, 3 disagreement (classifier vs oracle, table
row or strict-mode claim failing), 4 undecided under the configured budgets.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Any, Callable, Iterable, Iterator

import click

from . import arith, quadratic
from .arith import FactorBudgetError, squarefree_part
from .biquad import PolyaReport, biquadratic_field, polya_report
from .quadratic import (UNDECIDED, UndecidedError, fundamental_unit,
                        quadratic_polya_oracle, zantema_classify)
from .verify import (THEOREMS, EpsilonWitness, TheoremReport, contrast_rajaei,
                     pollack_search, verify_theorem)


def _common_options(fn: Callable) -> Callable:
    fn = click.option("--budget-normeq", type=int, default=None,
                      envvar="POLYA_NORMEQ_BUDGET",
                      help="Norm-equation scan budget (default from env or built-in).")(fn)
    fn = click.option("--budget-factor", type=int, default=None,
                      envvar="POLYA_FACTOR_BUDGET",
                      help="Factoring budget (default from env or built-in).")(fn)
    fn = click.option("--output", type=click.Path(dir_okay=False, writable=True),
                      default=None, help="Write the report here instead of stdout.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(("text", "json", "csv")),
                      default="text", show_default=True,
                      help="Report format.")(fn)
    return fn


def _batch_options(fn: Callable) -> Callable:
    fn = click.option("--jobs", type=int, default=1, show_default=True,
                      help="Worker threads; output order is unaffected.")(fn)
    fn = click.option("--strict", is_flag=True,
                      help="Exit 3 when any computed claim does not match.")(fn)
    return fn


@contextmanager
def _budget_guard(ctx: click.Context) -> Iterator[None]:
    """Map budget exhaustion anywhere in a command body to exit code 4."""
    try:
        yield
    except (FactorBudgetError, UndecidedError) as exc:
        click.echo(f"undecided: {exc}", err=True)
        ctx.exit(4)


def _apply_budgets(budget_factor: int | None, budget_normeq: int | None) -> None:
    if budget_factor is not None:
        if budget_factor <= 0:
            raise click.UsageError("--budget-factor must be positive")
        arith.DEFAULT_FACTOR_BUDGET = budget_factor
    if budget_normeq is not None:
        if budget_normeq <= 0:
            raise click.UsageError("--budget-normeq must be positive")
        quadratic.DEFAULT_NORMEQ_BUDGET = budget_normeq


def _unit_payload(d: int) -> dict[str, Any] | None:
    if d < 2:
        return None
    u = fundamental_unit(d)
    return {"d": u.d, "z": str(u.z), "t": str(u.t), "denom": u.denom, "norm": u.norm}


def _unit_text(d: int) -> str:
    u = fundamental_unit(d)
    body = f"{u.z} + {u.t}*sqrt({u.d})"
    if u.denom == 2:
        body = f"({body})/2"
    return f"{body}, norm {u.norm}"


def _witness_payload(w: EpsilonWitness | None) -> dict[str, Any] | None:
    if w is None:
        return None
    return {"d": w.d, "delta": w.delta, "g": w.g, "m": str(w.m), "n": str(w.n),
            "epsilon": w.epsilon, "eta": w.eta, "case_label": w.case_label}


def _field_payload(report: PolyaReport) -> dict[str, Any]:
    f = report.field
    return {
        "m": f.m, "n": f.n, "deltas": list(f.deltas),
        "ramification": [list(e) for e in report.profile.entries],
        "product_e": report.profile.product,
        "h_generators": [str(c) for c in report.h_generators],
        "h_order": report.h_order,
        "index_factor": report.index_factor,
        "h1_order": report.h1_order,
        "po_order": report.po_order,
        "po_structure": report.po_structure,
        "unit_norms": list(report.unit_norms),
        "polya": report.polya,
    }


def _field_text(report: PolyaReport) -> list[str]:
    f = report.field
    ram = ", ".join(f"e_{l} = {e}" for l, e in report.profile.entries)
    return [
        f"field: Q(sqrt({f.m}), sqrt({f.n})) with kernels {f.deltas}",
        f"ramification: {ram}; product {report.profile.product}",
        f"h generators: {', '.join(str(c) for c in report.h_generators)}",
        f"h order: {report.h_order}, index factor: {report.index_factor}, "
        f"h1 order: {report.h1_order}",
        f"po order: {report.po_order}, structure: {report.po_structure}",
        f"unit norms: {', '.join(str(v) for v in report.unit_norms)}",
        f"polya: {'yes' if report.polya else 'no'}",
    ]


def _theorem_payload(report: TheoremReport) -> dict[str, Any]:
    field = report.field_report
    return {
        "theorem": report.theorem,
        "triple": list(report.triple),
        "hypotheses_ok": report.hypotheses.ok,
        "hypothesis_checks": [[label, ok] for label, ok in report.hypotheses.checks],
        "field_report": None if field is None else _field_payload(field),
        "epsilon_witness": _witness_payload(report.epsilon_witness),
        "epsilon_in_allowed_set": report.epsilon_in_allowed_set,
        "claim_matches": report.claim_matches,
        "anomalies": list(report.anomalies),
    }


_THEOREM_COLUMNS = ("theorem", "triple", "hypotheses_ok", "po_order", "h1_order",
                    "product_e", "claim_matches", "epsilon", "epsilon_in_allowed_set",
                    "epsilon_witness", "unit_norms", "anomalies")


def _theorem_row(report: TheoremReport) -> dict[str, Any]:
    field = report.field_report
    w = report.epsilon_witness
    return {
        "theorem": report.theorem,
        "triple": list(report.triple),
        "hypotheses_ok": report.hypotheses.ok,
        "po_order": None if field is None else field.po_order,
        "h1_order": None if field is None else field.h1_order,
        "product_e": None if field is None else field.profile.product,
        "claim_matches": report.claim_matches,
        "epsilon": None if w is None else w.epsilon,
        "epsilon_in_allowed_set": report.epsilon_in_allowed_set,
        "epsilon_witness": _witness_payload(w),
        "unit_norms": None if field is None else list(field.unit_norms),
        "anomalies": list(report.anomalies),
    }


def _theorem_text(report: TheoremReport) -> list[str]:
    triple = ", ".join(str(v) for v in report.triple)
    lines = [f"{report.theorem} ({triple}): hypotheses "
             f"{'ok' if report.hypotheses.ok else 'FAIL'}"]
    if not report.hypotheses.ok:
        lines.extend(f"  failed: {label}" for label, ok in report.hypotheses.checks
                     if not ok)
    field = report.field_report
    if field is None:
        lines.append("  field not computed")
        return lines
    lines.append(f"  po order {field.po_order}, h1 order {field.h1_order}, "
                 f"product_e {field.profile.product}, claim matches: "
                 f"{'yes' if report.claim_matches else 'no'}")
    w = report.epsilon_witness
    if w is not None:
        member = "in" if report.epsilon_in_allowed_set else "NOT in"
        lines.append(f"  epsilon witness for kernel {w.d}: epsilon {w.epsilon} "
                     f"({w.case_label}), {member} the allowed set")
    for note in report.anomalies:
        lines.append(f"  anomaly: {note}")
    return lines


def _emit(fmt: str, output: str | None, payloads: list[dict[str, Any]],
          columns: tuple[str, ...], text_lines: list[str]) -> None:
    if fmt == "json":
        body = "\n".join(json.dumps(p) for p in payloads) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for p in payloads:
            row = []
            for col in columns:
                v = p.get(col)
                if isinstance(v, (dict, list)):
                    v = json.dumps(v)
                elif v is None:
                    v = ""
                elif isinstance(v, bool):
                    v = str(v).lower()
                row.append(v)
            writer.writerow(row)
        body = buf.getvalue()
    else:
        body = "\n".join(text_lines) + "\n"
    if output is None:
        click.echo(body, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(body)


def _parallel_map(jobs: int, fn: Callable, items: Iterable) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


@click.group()
def main() -> None:
    """Polya groups of real quadratic and totally real bi-quadratic fields."""


@main.command("classify-quadratic",
              context_settings={"ignore_unknown_options": True})
@click.argument("d", type=int)
@_common_options
@click.pass_context
def cmd_classify_quadratic(ctx: click.Context, d: int, fmt: str, output: str | None,
                           budget_factor: int | None, budget_normeq: int | None
                           ) -> None:
    """Classify Q(sqrt(D)) by the unit criterion and by the ideal oracle."""
    _apply_budgets(budget_factor, budget_normeq)
    with _budget_guard(ctx):
        if d in (0, 1) or squarefree_part(d) != d:
            raise click.UsageError(f"d must be a squarefree integer other than 0 and 1, got {d}")
        verdict = zantema_classify(d)
        oracle = quadratic_polya_oracle(d)
    payload = {
        "d": d,
        "zantema": verdict.verdict,
        "case": verdict.case,
        "oracle": oracle,
        "agreement": verdict.verdict == oracle,
        "unit": _unit_payload(d),
    }
    case = f" ({verdict.case})" if verdict.case is not None else ""
    lines = [f"zantema: {verdict.verdict}{case}", f"oracle: {oracle}"]
    if d > 1:
        lines.append(f"unit: {_unit_text(d)}")
    columns = ("d", "zantema", "case", "oracle", "agreement", "unit")
    _emit(fmt, output, [payload], columns, lines)
    if oracle == UNDECIDED:
        ctx.exit(4)
    if verdict.verdict != oracle:
        ctx.exit(3)


@main.command("analyze")
@click.argument("m", type=int)
@click.argument("n", type=int)
@_common_options
@click.pass_context
def cmd_analyze(ctx: click.Context, m: int, n: int, fmt: str, output: str | None,
                budget_factor: int | None, budget_normeq: int | None) -> None:
    """Full Polya report for the bi-quadratic field Q(sqrt(M), sqrt(N))."""
    _apply_budgets(budget_factor, budget_normeq)
    with _budget_guard(ctx):
        try:
            field = biquadratic_field(m, n)
            report = polya_report(field)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    columns = ("m", "n", "deltas", "ramification", "product_e", "h_generators",
               "h_order", "index_factor", "h1_order", "po_order", "po_structure",
               "unit_norms", "polya")
    _emit(fmt, output, [_field_payload(report)], columns, _field_text(report))


def _finish_reports(ctx: click.Context, fmt: str, output: str | None,
                    reports: list[TheoremReport], strict: bool,
                    require_all_claims: bool = False) -> None:
    payloads = [_theorem_payload(r) for r in reports]
    rows = [_theorem_row(r) for r in reports]
    lines: list[str] = []
    for r in reports:
        lines.extend(_theorem_text(r))
    if fmt == "csv":
        _emit(fmt, output, rows, _THEOREM_COLUMNS, lines)
    else:
        _emit(fmt, output, payloads, _THEOREM_COLUMNS, lines)
    mismatched = [r for r in reports if r.claim_matches is False]
    if mismatched and (strict or require_all_claims):
        ctx.exit(3)


def _theorem_id(value: str) -> str:
    theorem = value.upper()
    if theorem not in THEOREMS:
        raise click.UsageError(f"theorem must be one of t1, t2, t3, got {value!r}")
    return theorem


@main.command("verify", context_settings={"ignore_unknown_options": True})
@click.argument("theorem")
@click.argument("primes", type=int, nargs=-1)
@_batch_options
@_common_options
@click.pass_context
def cmd_verify(ctx: click.Context, theorem: str, primes: tuple[int, ...], fmt: str,
               output: str | None, budget_factor: int | None,
               budget_normeq: int | None, strict: bool, jobs: int) -> None:
    """Verify one theorem instance, e.g. `verify t1 3 17 41` or `verify t3 5 17`."""
    _apply_budgets(budget_factor, budget_normeq)
    theorem = _theorem_id(theorem)
    expected = 2 if theorem == "T3" else 3
    if len(primes) != expected:
        raise click.UsageError(f"{theorem.lower()} takes {expected} primes, "
                               f"got {len(primes)}")
    with _budget_guard(ctx):
        report = verify_theorem(theorem, primes)
    _finish_reports(ctx, fmt, output, [report], strict)


@main.command("scan")
@click.argument("theorem")
@click.argument("bound", type=int)
@_batch_options
@_common_options
@click.pass_context
def cmd_scan(ctx: click.Context, theorem: str, bound: int, fmt: str,
             output: str | None, budget_factor: int | None,
             budget_normeq: int | None, strict: bool, jobs: int) -> None:
    """Verify every admissible triple with max prime <= BOUND."""
    _apply_budgets(budget_factor, budget_normeq)
    theorem = _theorem_id(theorem)
    from .verify import admissible_triples
    try:
        triples = admissible_triples(theorem, bound)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    with _budget_guard(ctx):
        reports = _parallel_map(jobs, lambda t: verify_theorem(theorem, t), triples)
    _finish_reports(ctx, fmt, output, reports, strict)


@main.command("table")
@_batch_options
@_common_options
@click.pass_context
def cmd_table(ctx: click.Context, fmt: str, output: str | None,
              budget_factor: int | None, budget_normeq: int | None,
              strict: bool, jobs: int) -> None:
    """Reproduce the published 20-row table; exit 0 iff every row has po order 2."""
    _apply_budgets(budget_factor, budget_normeq)
    from .verify import TABLE_ROWS, T3
    with _budget_guard(ctx):
        reports = _parallel_map(jobs, lambda row: verify_theorem(T3, row[1:]), TABLE_ROWS)
    _finish_reports(ctx, fmt, output, reports, strict, require_all_claims=True)


@main.command("pollack")
@click.argument("r", type=int)
@_common_options
@click.pass_context
def cmd_pollack(ctx: click.Context, r: int, fmt: str, output: str | None,
                budget_factor: int | None, budget_normeq: int | None) -> None:
    """Smallest primes p = 3 mod 4 and q = 1 mod 4 below R that are both
    non-residues mod R."""
    _apply_budgets(budget_factor, budget_normeq)
    try:
        p, q = pollack_search(r)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except RuntimeError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(3)
    payload = {"r": r, "p": p, "q": q}
    _emit(fmt, output, [payload], ("r", "p", "q"), [f"r = {r}: p = {p}, q = {q}"])


@main.command("contrast")
@click.argument("p", type=int)
@click.argument("q", type=int)
@click.argument("r", type=int)
@_batch_options
@_common_options
@click.pass_context
def cmd_contrast(ctx: click.Context, p: int, q: int, r: int, fmt: str,
                 output: str | None, budget_factor: int | None,
                 budget_normeq: int | None, strict: bool, jobs: int) -> None:
    """Check the contrasting family Q(sqrt(P), sqrt(Q*R)) with P = Q = 3 mod 4,
    R = 5 mod 8: expected Polya."""
    _apply_budgets(budget_factor, budget_normeq)
    with _budget_guard(ctx):
        try:
            report = contrast_rajaei(p, q, r)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    payload = {
        "triple": list(report.triple),
        "field_report": _field_payload(report.field_report),
        "matches": report.matches,
        "anomalies": list(report.anomalies),
    }
    row = {
        "triple": list(report.triple),
        "po_order": report.field_report.po_order,
        "h1_order": report.field_report.h1_order,
        "product_e": report.field_report.profile.product,
        "matches": report.matches,
        "anomalies": list(report.anomalies),
    }
    columns = ("triple", "po_order", "h1_order", "product_e", "matches", "anomalies")
    triple = ", ".join(str(v) for v in report.triple)
    lines = [f"contrast ({triple}): po order {report.field_report.po_order}, "
             f"expected 1, matches: {'yes' if report.matches else 'no'}"]
    lines.extend(f"  anomaly: {note}" for note in report.anomalies)
    _emit(fmt, output, [row] if fmt == "csv" else [payload], columns, lines)
    if report.anomalies and strict:
        ctx.exit(3)


if __name__ == "__main__":
    main()
