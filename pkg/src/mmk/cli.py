"""Command-line interface.

Exit codes: 0 success, 1 validation or domain error, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import ahp, model, motorola, stats
from .errors import MmkError, SchemaError
from .store import resolve_data_dir

_EXIT_OK = 0
_EXIT_INVALID = 1
_EXIT_USAGE = 2
_EXIT_IO = 3


def _read(path: str) -> str:
    return Path(path).read_text("utf-8")


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_model(value: str) -> model.MaturityModel:
    """A bundled model name ("sre-himm", "sre-himm@1") or a path to a model file."""
    looks_like_path = value.endswith(".json") or os.sep in value
    if not looks_like_path:
        try:
            return model.default_registry().get(value)
        except MmkError:
            if not Path(value).exists():
                raise
    return model.parse_model(_read(value))


def _load_series(path: str) -> tuple[list[str], list[float], list[float]]:
    """Rank series from JSON, or CSV with label,a,b rows (header optional)."""
    text = _read(path)
    if path.endswith(".csv"):
        labels, xs, ys = [], [], []
        rows = list(csv.reader(io.StringIO(text)))
        for ri, row in enumerate(rows):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise SchemaError(f"CSV row {ri + 1} needs label,a,b", path)
            try:
                a, b = float(row[1]), float(row[2])
            except ValueError:
                if ri == 0:
                    continue  # header row
                raise SchemaError(f"CSV row {ri + 1} has non-numeric values", path)
            labels.append(row[0].strip())
            xs.append(a)
            ys.append(b)
        if not labels:
            raise SchemaError("CSV contains no data rows", path)
        return labels, xs, ys
    return stats.parse_rank_series(text)


# --- subcommands ----------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    checked = []
    if args.model:
        _load_model(args.model)
        checked.append(("model", args.model))
    if args.matrix:
        ahp.parse_matrix_document(_read(args.matrix))
        checked.append(("matrix", args.matrix))
    if args.hierarchy:
        ahp.parse_hierarchy_document(_read(args.hierarchy))
        checked.append(("hierarchy", args.hierarchy))
    if args.scores:
        motorola.parse_scores_document(_read(args.scores))
        checked.append(("scores", args.scores))
    if args.records:
        model.parse_frequency_records(_read(args.records))
        checked.append(("records", args.records))
    if args.tally:
        stats.parse_likert_document(_read(args.tally))
        checked.append(("tally", args.tally))
    if not checked:
        print("error: nothing to validate; pass --model, --matrix, --hierarchy, --scores, --records, or --tally", file=sys.stderr)
        return _EXIT_USAGE
    if args.format == "json":
        _emit_json({"ok": True, "checked": [{"kind": k, "path": p} for k, p in checked]})
    else:
        for kind, path in checked:
            print(f"{kind} ok: {path}")
    return _EXIT_OK


def _method(args: argparse.Namespace) -> ahp.WeightMethod:
    return ahp.WeightMethod.EIGENVECTOR if args.method == "eigen" else ahp.WeightMethod.COLUMN_NORM


def cmd_ahp_weights(args: argparse.Namespace) -> int:
    m = ahp.parse_matrix_document(_read(args.matrix))
    w = ahp.priority_weights(m, _method(args))
    ranks = ahp.rank_weights(w)
    if args.format == "json":
        _emit_json(
            {
                "items": list(w.items),
                "weights": list(w.weights),
                "ranks": ranks,
                "method": w.method.value,
            }
        )
    else:
        width = max(len(s) for s in w.items)
        for item, weight, rank in zip(w.items, w.weights, ranks):
            print(f"{item:<{width}}  {weight:.3f}  rank {rank}")
    return _EXIT_OK


def cmd_ahp_check(args: argparse.Namespace) -> int:
    m = ahp.parse_matrix_document(_read(args.matrix))
    report = ahp.consistency_report(m, _method(args))
    if args.format == "json":
        _emit_json(
            {
                "lambda_max": report.lambda_max,
                "ci": report.ci,
                "ri": report.ri,
                "cr": report.cr,
                "consistent": report.consistent,
                "method": _method(args).value,
            }
        )
    else:
        print(f"lambda_max: {report.lambda_max:.2f}")
        print(f"CI: {report.ci:.2f}")
        print(f"RI: {report.ri:.2f}")
        print(f"CR: {report.cr:.2f}")
        print("verdict: consistent" if report.consistent else "verdict: inconsistent")
    return _EXIT_OK


def cmd_ahp_global(args: argparse.Namespace) -> int:
    h = ahp.parse_hierarchy_document(_read(args.hierarchy))
    ranking = ahp.aggregate_global(h)
    if args.format == "json":
        _emit_json(
            {
                "entries": [
                    {
                        "item": e.item,
                        "category": e.category,
                        "local_weight": e.local_weight,
                        "local_rank": e.local_rank,
                        "global_weight": e.global_weight,
                        "global_rank": e.global_rank,
                    }
                    for e in ranking.entries
                ]
            }
        )
    else:
        width = max(len(e.item) for e in ranking.entries)
        cat_width = max(len(e.category) for e in ranking.entries)
        for e in sorted(ranking.entries, key=lambda e: (e.global_rank,)):
            print(
                f"{e.item:<{width}}  {e.category:<{cat_width}}  "
                f"local {e.local_weight:.3f} (rank {e.local_rank})  "
                f"global {e.global_weight:.3f} (rank {e.global_rank})"
            )
    return _EXIT_OK


def cmd_ahp_hint(args: argparse.Namespace) -> int:
    m = ahp.parse_matrix_document(_read(args.matrix))
    w = ahp.priority_weights(m, _method(args))
    hint = ahp.inconsistency_hint(m, w)
    if args.format == "json":
        _emit_json(
            {
                "row_item": hint.row_item,
                "col_item": hint.col_item,
                "current": hint.current,
                "suggested": hint.suggested,
                "deviation": hint.deviation,
            }
        )
    else:
        print(
            f"worst pair: ({hint.row_item}, {hint.col_item}) "
            f"current {ahp.format_judgment(hint.current)}, "
            f"suggested {hint.suggested:.3f} (log deviation {hint.deviation:.3f})"
        )
    return _EXIT_OK


def _report_markdown(report: motorola.MaturityReport) -> str:
    lines = [f"# Maturity report for {report.model_ref}", ""]
    lines += [f"Achieved level: **{report.achieved_level}**", ""]
    lines += ["## Level ladder", "", "| Level | Name | Status |", "|---|---|---|"]
    for level in report.levels:
        if level.number == 1:
            status = "baseline"
        elif level.number <= report.achieved_level:
            status = "achieved"
        else:
            status = "not achieved"
        lines.append(f"| {level.number} | {level.name} | {status} |")
    lines += ["", "## Factors", "", "| Level | Factor | Kind | Final score | Status |", "|---|---|---|---|---|"]
    for level in report.levels[1:]:
        for f in level.factors:
            marker = "" if f.complete else " (incomplete)"
            lines.append(
                f"| {level.number} | {f.factor_id}: {f.name} | {f.kind} | {f.final_score:.2f} | {f.status.value}{marker} |"
            )
    if report.weak_factors:
        lines += ["", "## Weak factors", ""]
        for w in report.weak_factors:
            lines.append(f"- level {w.level}: {w.factor_id} at {w.final_score:.2f}")
    return "\n".join(lines)


def _report_text(report: motorola.MaturityReport) -> str:
    lines = [f"model: {report.model_ref}", f"Achieved level: {report.achieved_level}", ""]
    for level in report.levels[1:]:
        lines.append(f"level {level.number}: {level.name}")
        for f in level.factors:
            marker = "" if f.complete else " (incomplete)"
            lines.append(
                f"  {f.factor_id:<6} {f.final_score:>5.2f}  {f.status.value}{marker}  {f.name}"
            )
    if report.weak_factors:
        lines += ["", "weak factors:"]
        for w in report.weak_factors:
            lines.append(f"  level {w.level}: {w.factor_id} at {w.final_score:.2f}")
    return "\n".join(lines)


def _build_report(args: argparse.Namespace) -> motorola.MaturityReport:
    doc_model, doc_partial, scores = motorola.parse_scores_document(_read(args.scores))
    mdl = _load_model(args.model) if args.model else _load_model(doc_model)
    partial = bool(args.partial) or doc_partial
    return motorola.assess_maturity(mdl, scores, partial=partial)


def cmd_assess(args: argparse.Namespace) -> int:
    report = _build_report(args)
    if args.format == "json":
        _emit_json(motorola.report_to_dict(report))
    elif args.format == "markdown":
        print(_report_markdown(report))
    else:
        print(_report_text(report))
    return _EXIT_OK


def cmd_whatif(args: argparse.Namespace) -> int:
    report = _build_report(args)
    plan = motorola.whatif_plan(report, args.target_level)
    if args.format == "json":
        _emit_json(motorola.plan_to_dict(plan))
        return _EXIT_OK
    lines = [f"target level: {plan.target_level}"]
    if not plan.factors:
        lines.append("nothing to do: target already satisfied by strong factors")
    for fp in plan.factors:
        lines.append(
            f"\n{fp.factor_id} (level {fp.level}): final {fp.final_score:.2f}, needs {fp.deficit} practice point(s)"
        )
        for pr in fp.raises:
            lines.append(
                f"  {pr.practice_id}: {pr.from_score} -> {pr.to_score}  "
                f"(approach {pr.from_dims.approach}->{pr.to_dims.approach}, "
                f"deployment {pr.from_dims.deployment}->{pr.to_dims.deployment}, "
                f"results {pr.from_dims.results}->{pr.to_dims.results})"
            )
    print("\n".join(lines))
    return _EXIT_OK


def _parse_summary(text: str) -> stats.SummaryStats:
    parts = text.split(",")
    if len(parts) != 3:
        raise SchemaError(f"summary must be mean,sd,n - got {text!r}")
    try:
        return stats.SummaryStats(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise SchemaError(f"summary must be mean,sd,n - got {text!r}") from exc


def cmd_stats_ttest(args: argparse.Namespace) -> int:
    variant = stats.TTestVariant(args.variant)
    if args.summary:
        if len(args.summary) != 2:
            print("error: pass --summary mean,sd,n exactly twice", file=sys.stderr)
            return _EXIT_USAGE
        result = stats.t_test_from_summary(
            _parse_summary(args.summary[0]), _parse_summary(args.summary[1]), variant
        )
    elif args.series:
        _, xs, ys = _load_series(args.series)
        result = stats.t_test_from_samples(xs, ys, variant)
    else:
        print("error: pass either --summary twice or --series", file=sys.stderr)
        return _EXIT_USAGE
    if args.format == "json":
        _emit_json(
            {"t": result.t, "df": result.df, "p_two_tailed": result.p_two_tailed, "variant": result.variant.value}
        )
    else:
        print(f"t: {result.t:.3f}")
        print(f"df: {result.df:.3f}")
        print(f"p (two-tailed): {result.p_two_tailed:.3f}")
        print(f"variant: {result.variant.value}")
    return _EXIT_OK


def cmd_stats_pearson(args: argparse.Namespace) -> int:
    _, xs, ys = _load_series(args.series)
    result = stats.pearson_r(list(zip(xs, ys)))
    if args.format == "json":
        _emit_json({"r": result.r, "n": result.n, "p_two_tailed": result.p_two_tailed})
    else:
        print(f"r: {result.r:.3f}")
        print(f"n: {result.n}")
        print(f"p (two-tailed): {result.p_two_tailed:.3f}")
    return _EXIT_OK


def cmd_stats_levene(args: argparse.Namespace) -> int:
    _, xs, ys = _load_series(args.series)
    result = stats.levene_test(xs, ys, stats.LeveneCenter(args.center))
    if args.format == "json":
        _emit_json(
            {"f": result.f, "df1": result.df1, "df2": result.df2, "p": result.p, "center": result.center.value}
        )
    else:
        print(f"F: {result.f:.3f}")
        print(f"df: ({result.df1}, {result.df2})")
        print(f"p: {result.p:.3f}")
        print(f"center: {result.center.value}")
    return _EXIT_OK


def cmd_stats_tally(args: argparse.Namespace) -> int:
    rows = stats.parse_likert_document(_read(args.tally))
    results = [(label, stats.tally_percentages(t)) for label, t in rows]
    if args.format == "json":
        _emit_json(
            {
                "rows": [
                    {
                        "label": label,
                        "positive_pct": p.positive_pct,
                        "negative_pct": p.negative_pct,
                        "neutral_pct": p.neutral_pct,
                    }
                    for label, p in results
                ]
            }
        )
    else:
        width = max(len(label) for label, _ in results) if results else 0
        for label, p in results:
            print(f"{label:<{width}}  positive {p.positive_pct}%  negative {p.negative_pct}%  neutral {p.neutral_pct}%")
    return _EXIT_OK


def cmd_stats_critical(args: argparse.Namespace) -> int:
    records, notes = model.parse_frequency_records(_read(args.records))
    critical = model.criticality_filter(records, args.threshold)
    ordered = [r.factor_id for r in records if r.factor_id in critical]
    if args.format == "json":
        _emit_json({"critical": ordered, "threshold": args.threshold, "notes": notes})
    else:
        print(f"critical at >= {args.threshold:g}% in both sources: {', '.join(ordered) if ordered else '(none)'}")
        for note in notes:
            print(f"note: {note}")
    return _EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=resolve_data_dir(args.data_dir))
    uvicorn.run(app, host=args.host, port=args.port)
    return _EXIT_OK


# --- parser -----------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json", "markdown"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mmk", description="Process-maturity assessment toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate input documents")
    p.add_argument("--model")
    p.add_argument("--matrix")
    p.add_argument("--hierarchy")
    p.add_argument("--scores")
    p.add_argument("--records")
    p.add_argument("--tally")
    _add_format(p)
    p.set_defaults(func=cmd_validate)

    ahp_parser = sub.add_parser("ahp", help="pairwise-comparison analysis")
    ahp_sub = ahp_parser.add_subparsers(dest="ahp_command", required=True)

    p = ahp_sub.add_parser("weights", help="priority weights of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=["colnorm", "eigen"], default="colnorm")
    _add_format(p)
    p.set_defaults(func=cmd_ahp_weights)

    p = ahp_sub.add_parser("check", help="consistency of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=["colnorm", "eigen"], default="colnorm")
    _add_format(p)
    p.set_defaults(func=cmd_ahp_check)

    p = ahp_sub.add_parser("global", help="global weights over a hierarchy")
    p.add_argument("--hierarchy", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_ahp_global)

    p = ahp_sub.add_parser("hint", help="most inconsistent judgment and a repair")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=["colnorm", "eigen"], default="colnorm")
    _add_format(p)
    p.set_defaults(func=cmd_ahp_hint)

    p = sub.add_parser("assess", help="maturity assessment from practice scores")
    p.add_argument("--model")
    p.add_argument("--scores", required=True)
    p.add_argument("--partial", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("whatif", help="cheapest raises to reach a target level")
    p.add_argument("--model")
    p.add_argument("--scores", required=True)
    p.add_argument("--partial", action="store_true")
    p.add_argument("--target-level", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_whatif)

    stats_parser = sub.add_parser("stats", help="evidence-comparison statistics")
    stats_sub = stats_parser.add_subparsers(dest="stats_command", required=True)

    p = stats_sub.add_parser("ttest", help="independent two-sample t-test")
    p.add_argument("--summary", action="append", metavar="MEAN,SD,N")
    p.add_argument("--series", help="rank-series JSON or CSV; series_a vs series_b")
    p.add_argument("--variant", choices=["pooled", "welch"], default="pooled")
    _add_format(p)
    p.set_defaults(func=cmd_stats_ttest)

    p = stats_sub.add_parser("pearson", help="Pearson correlation of two series")
    p.add_argument("--series", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_stats_pearson)

    p = stats_sub.add_parser("levene", help="equality-of-variances test")
    p.add_argument("--series", required=True)
    p.add_argument("--center", choices=["mean", "median"], default="mean")
    _add_format(p)
    p.set_defaults(func=cmd_stats_levene)

    p = stats_sub.add_parser("tally", help="Likert tally percentages")
    p.add_argument("--tally", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_stats_tally)

    p = stats_sub.add_parser("critical", help="criticality filter over frequency records")
    p.add_argument("--records", required=True)
    p.add_argument("--threshold", type=float, default=model.DEFAULT_CRITICALITY_THRESHOLD)
    _add_format(p)
    p.set_defaults(func=cmd_stats_critical)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="session storage directory (or MMK_DATA_DIR)")
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_OK if exc.code in (0, None) else _EXIT_USAGE
    try:
        return args.func(args)
    except MmkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INVALID
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return _EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
