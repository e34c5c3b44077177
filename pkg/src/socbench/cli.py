"""Command-line interface: evaluate, compare, check, fixture, and fuzz subcommands."""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections.abc import Sequence
from pathlib import Path

from .audit import (
    AlignmentError,
    ComplianceResult,
    FailureKind,
    SuppressionReport,
    build_run_metadata,
    check_compliance,
    compare_parsers,
    evaluate_outputs,
)
from .extraction import Parser, extract
from .scoring import ClassScore, GroundTruthRecord, ScoreReport
from .synthgen import FormatStyle, KeyCase, Separator, render_output, write_fixture
from .taxonomy import CanonicalCategory, KeywordTable, SeverityLevel

SCHEMA_VERSION = "1.0"


class CLIError(RuntimeError):
    """CLI failure carrying the process exit code."""

    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message)
        self.exit_code = exit_code


# ---------------------------------------------------------------------------
# Parser construction
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socbench",
        description=(
            "Score and audit structured-field predictions for security-log triage.\n\n"
            "Common workflows:\n"
            "  socbench fixture --out fixtures\n"
            "  socbench evaluate --predictions preds.json --ground-truth gt.json\n"
            "  socbench compare --predictions preds.json --ground-truth gt.json\n"
            "  socbench check --ground-truth gt.json --metadata meta.json\n"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "markdown", "text"),
        default="json",
        help="Output rendering (default: json).",
    )
    common.add_argument(
        "--keyword-table",
        default=None,
        metavar="PATH",
        help="Override the bundled normalization keyword table with a JSON file.",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    evaluate_parser = subparsers.add_parser(
        "evaluate",
        parents=[common],
        help="Score a predictions file against ground truth under one parser",
    )
    _add_dataset_arguments(evaluate_parser)
    evaluate_parser.add_argument(
        "--parser",
        choices=("strict", "fuzzy"),
        default="fuzzy",
        help="Field extractor to score with (default: fuzzy, the primary-metric parser).",
    )
    evaluate_parser.add_argument(
        "--metadata",
        default=None,
        metavar="PATH",
        help="Run-metadata JSON to embed in the report (inference parameters etc.).",
    )
    evaluate_parser.add_argument(
        "--confidence",
        type=float,
        default=0.95,
        help="Confidence level for per-class Wilson intervals (default: 0.95).",
    )
    evaluate_parser.set_defaults(handler=_cmd_evaluate)

    compare_parser = subparsers.add_parser(
        "compare",
        parents=[common],
        help="Score identical outputs under both parsers and report the deltas",
    )
    _add_dataset_arguments(compare_parser)
    compare_parser.add_argument("--metadata", default=None, metavar="PATH")
    compare_parser.add_argument("--confidence", type=float, default=0.95)
    compare_parser.set_defaults(handler=_cmd_compare)

    check_parser = subparsers.add_parser(
        "check",
        parents=[common],
        help="Check a run against the R1-R4 protocol requirements",
    )
    check_parser.add_argument(
        "--ground-truth",
        "--ground_truth",
        dest="ground_truth",
        required=True,
        metavar="PATH",
    )
    check_parser.add_argument("--metadata", required=True, metavar="PATH")
    check_parser.add_argument(
        "--primary-parser",
        choices=("strict", "fuzzy"),
        default="fuzzy",
        help="Parser behind the headline figure (R2 requires fuzzy).",
    )
    check_parser.add_argument(
        "--report",
        default=None,
        metavar="PATH",
        help="Previously emitted score report; enables the R3 breakdown-presence check.",
    )
    check_parser.set_defaults(handler=_cmd_check)

    fixture_parser = subparsers.add_parser(
        "fixture",
        parents=[common],
        help="Write the bundled deterministic 50-record dataset pair",
    )
    fixture_parser.add_argument(
        "--out",
        default="fixtures",
        metavar="DIR",
        help="Directory to write the fixture under (default: fixtures).",
    )
    fixture_parser.set_defaults(handler=_cmd_fixture)

    fuzz_parser = subparsers.add_parser(
        "fuzz",
        parents=[common],
        help="Measure extraction recall for both parsers over the style grid",
    )
    fuzz_parser.add_argument(
        "--samples",
        type=int,
        default=50,
        help="Random renderings per key-case/separator style (default: 50).",
    )
    fuzz_parser.add_argument("--seed", type=int, default=0)
    fuzz_parser.set_defaults(handler=_cmd_fuzz)

    return parser


def _add_dataset_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--predictions", required=True, metavar="PATH")
    parser.add_argument(
        "--ground-truth",
        "--ground_truth",
        dest="ground_truth",
        required=True,
        metavar="PATH",
    )


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    try:
        return int(args.handler(args))
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _cmd_evaluate(args: argparse.Namespace) -> int:
    table = _load_table(args)
    parser = Parser(args.parser)
    confidence = _validated_confidence(args.confidence)
    truths = load_ground_truth(args.ground_truth)
    raws = load_predictions(args.predictions)
    metadata = _build_metadata(parser, table, args.metadata)
    try:
        _, report = evaluate_outputs(truths, raws, parser, table, confidence, metadata)
    except (AlignmentError, ValueError) as exc:
        raise CLIError(str(exc)) from exc
    document = _score_report_document(report)
    _emit(document, args.format, _markdown_score_report, _text_score_report)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    table = _load_table(args)
    confidence = _validated_confidence(args.confidence)
    truths = load_ground_truth(args.ground_truth)
    raws = load_predictions(args.predictions)
    metadata = _build_metadata(Parser.FUZZY, table, args.metadata)
    try:
        comparison = compare_parsers(truths, raws, table, confidence, metadata)
    except (AlignmentError, ValueError) as exc:
        raise CLIError(str(exc)) from exc
    document = _comparison_document(comparison)
    _emit(document, args.format, _markdown_comparison, _text_comparison)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    truths = load_ground_truth(args.ground_truth)
    metadata = _load_json_object(args.metadata, "metadata")
    report = None
    if args.report is not None:
        report = _report_from_document(_load_json_object(args.report, "report"))
    result = check_compliance(truths, metadata, Parser(args.primary_parser), report)
    document = _compliance_document(result)
    _emit(document, args.format, _markdown_compliance, _text_compliance)
    return 0 if result.passed else 1


def _cmd_fixture(args: argparse.Namespace) -> int:
    ground_truth_path, predictions_path = write_fixture(args.out)
    document = {
        "schema_version": SCHEMA_VERSION,
        "kind": "fixture_paths",
        "ground_truth": str(ground_truth_path),
        "predictions": str(predictions_path),
    }
    lines = [
        f"wrote ground truth: {ground_truth_path}",
        f"wrote predictions:  {predictions_path}",
    ]
    _emit(document, args.format, lambda d: "\n".join(lines), lambda d: "\n".join(lines))
    return 0


def _cmd_fuzz(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise CLIError("--samples must be >= 1")
    table = _load_table(args)
    document = _run_fuzz(args.samples, args.seed, table)
    _emit(document, args.format, _markdown_fuzz, _text_fuzz)
    return 0


# ---------------------------------------------------------------------------
# File loading
# ---------------------------------------------------------------------------


def _load_json(path: str | Path, label: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise CLIError(f"cannot read {label} file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"malformed JSON in {label} file {path}: {exc}") from exc


def _load_json_object(path: str | Path, label: str) -> dict:
    data = _load_json(path, label)
    if not isinstance(data, dict):
        raise CLIError(f"{label} file {path} must contain a JSON object")
    return data


def load_predictions(path: str | Path) -> dict[str, str]:
    """Load a predictions file: a JSON array of {id, raw_output} objects."""
    data = _load_json(path, "predictions")
    if not isinstance(data, list):
        raise CLIError(f"predictions file {path} must contain a JSON array")
    raws: dict[str, str] = {}
    for position, item in enumerate(data):
        if not isinstance(item, dict):
            raise CLIError(f"predictions file {path}: entry {position} is not an object")
        record_id = item.get("id")
        raw_output = item.get("raw_output")
        if not isinstance(record_id, str) or not record_id:
            raise CLIError(f"predictions file {path}: entry {position} has no string 'id'")
        if not isinstance(raw_output, str):
            raise CLIError(f"predictions file {path}: id {record_id!r} has no string 'raw_output'")
        if record_id in raws:
            raise CLIError(f"predictions file {path}: duplicate id {record_id!r}")
        raws[record_id] = raw_output
    return raws


def load_ground_truth(path: str | Path) -> list[GroundTruthRecord]:
    """Load a ground-truth file; category and severity must resolve canonically."""
    data = _load_json(path, "ground truth")
    if not isinstance(data, list):
        raise CLIError(f"ground truth file {path} must contain a JSON array")
    records: list[GroundTruthRecord] = []
    seen: set[str] = set()
    for position, item in enumerate(data):
        if not isinstance(item, dict):
            raise CLIError(f"ground truth file {path}: entry {position} is not an object")
        record_id = item.get("id")
        if not isinstance(record_id, str) or not record_id:
            raise CLIError(f"ground truth file {path}: entry {position} has no string 'id'")
        if record_id in seen:
            raise CLIError(f"ground truth file {path}: duplicate id {record_id!r}")
        seen.add(record_id)
        try:
            category = CanonicalCategory.resolve(str(item.get("category", "")))
            severity = SeverityLevel.resolve(str(item.get("severity", "")))
        except ValueError as exc:
            raise CLIError(f"ground truth file {path}: id {record_id!r}: {exc}") from exc
        mitre = item.get("mitre_technique")
        if mitre is not None and not isinstance(mitre, str):
            raise CLIError(f"ground truth file {path}: id {record_id!r}: mitre_technique must be a string")
        records.append(
            GroundTruthRecord(id=record_id, category=category, severity=severity, mitre_technique=mitre)
        )
    return records


def _load_table(args: argparse.Namespace) -> KeywordTable:
    if args.keyword_table is None:
        return KeywordTable.default()
    try:
        return KeywordTable.load(args.keyword_table)
    except OSError as exc:
        raise CLIError(f"cannot read keyword table {args.keyword_table}: {exc}") from exc
    except (ValueError, json.JSONDecodeError) as exc:
        raise CLIError(f"invalid keyword table {args.keyword_table}: {exc}") from exc


def _build_metadata(parser: Parser, table: KeywordTable, metadata_path: str | None):
    overrides = None
    if metadata_path is not None:
        overrides = _load_json_object(metadata_path, "metadata")
    try:
        return build_run_metadata(parser, table, overrides)
    except ValueError as exc:
        raise CLIError(str(exc)) from exc


def _validated_confidence(confidence: float) -> float:
    if not 0.0 < confidence < 1.0:
        raise CLIError(f"--confidence must be in (0, 1), got {confidence}")
    return confidence


def _report_from_document(document: dict) -> ScoreReport:
    """Rebuild enough of a ScoreReport from its JSON form for compliance checks."""
    if document.get("kind") != "score_report":
        raise CLIError("report file is not a score report document")
    try:
        from .audit import ClassFailureBreakdown

        per_class = tuple(
            ClassScore(
                category=CanonicalCategory.resolve(entry["category"]),
                n=int(entry["n"]),
                correct=int(entry["correct"]),
                accuracy=float(entry["accuracy"]),
                wilson_low=float(entry["wilson_low"]),
                wilson_high=float(entry["wilson_high"]),
            )
            for entry in document["per_class"]
        )
        breakdown = None
        if document.get("failure_inspection") is not None:
            breakdown = tuple(
                ClassFailureBreakdown(
                    category=CanonicalCategory.resolve(entry["category"]),
                    n=int(entry["n"]),
                    correct=int(entry["correct"]),
                    accuracy=float(entry["accuracy"]),
                    flagged=bool(entry["flagged"]),
                    failure_counts=(
                        {FailureKind(kind): int(count) for kind, count in entry["failure_counts"].items()}
                        if entry.get("failure_counts") is not None
                        else None
                    ),
                )
                for entry in document["failure_inspection"]
            )
        return ScoreReport(
            n_total=int(document["n_total"]),
            parser=Parser(document["parser"]),
            confidence=float(document["confidence"]),
            threat_correct_count=int(document["threat_correct_count"]),
            severity_correct_count=int(document["severity_correct_count"]),
            micro_threat_accuracy=float(document["micro_threat_accuracy"]),
            macro_threat_accuracy=float(document["macro_threat_accuracy"]),
            macro_class_count=int(document["macro_class_count"]),
            severity_accuracy=float(document["severity_accuracy"]),
            mitre_extraction_rate=float(document["mitre_extraction_rate"]),
            unmapped_threat_count=int(document["unmapped_threat_count"]),
            absent_threat_count=int(document["absent_threat_count"]),
            per_class=per_class,
            failure_breakdown=breakdown,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CLIError(f"malformed score report document: {exc}") from exc


# ---------------------------------------------------------------------------
# Fuzz run
# ---------------------------------------------------------------------------


def _run_fuzz(samples: int, seed: int, table: KeywordTable) -> dict:
    rng = random.Random(seed)
    categories = list(CanonicalCategory)
    severities = list(SeverityLevel)
    fields = ("threat", "severity", "mitre")

    styles_payload = []
    overall = {parser: {field: 0 for field in fields} for parser in Parser}
    total = 0
    for key_case in KeyCase:
        for separator in Separator:
            found = {parser: {field: 0 for field in fields} for parser in Parser}
            for index in range(samples):
                truth = GroundTruthRecord(
                    id=f"fuzz-{key_case.value}-{separator.value}-{index}",
                    category=rng.choice(categories),
                    severity=rng.choice(severities),
                    mitre_technique="T1110",
                )
                style = FormatStyle(key_case, separator, include_loop=rng.random() < 0.5)
                text = render_output(truth, style, seed=rng.randrange(2**31))
                for parser in Parser:
                    extracted = extract(text, parser)
                    found[parser]["threat"] += extracted.threat_raw is not None
                    found[parser]["severity"] += extracted.severity_raw is not None
                    found[parser]["mitre"] += extracted.mitre_raw is not None
            total += samples
            for parser in Parser:
                for field in fields:
                    overall[parser][field] += found[parser][field]
            styles_payload.append(
                {
                    "key_case": key_case.value,
                    "separator": separator.value,
                    "n": samples,
                    "fuzzy": {f"{field}_recall": found[Parser.FUZZY][field] / samples for field in fields},
                    "strict": {f"{field}_recall": found[Parser.STRICT][field] / samples for field in fields},
                }
            )

    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "extraction_recall",
        "samples_per_style": samples,
        "seed": seed,
        "normalization_version": table.version,
        "styles": styles_payload,
        "overall": {
            "n": total,
            "fuzzy": {f"{field}_recall": overall[Parser.FUZZY][field] / total for field in fields},
            "strict": {f"{field}_recall": overall[Parser.STRICT][field] / total for field in fields},
        },
    }


# ---------------------------------------------------------------------------
# Document builders and renderers
# ---------------------------------------------------------------------------


def _score_report_document(report: ScoreReport) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "score_report", **report.to_dict()}


def _comparison_document(comparison: SuppressionReport) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "parser_comparison", **comparison.to_dict()}


def _compliance_document(result: ComplianceResult) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "compliance_result", **result.to_dict()}


def _emit(document: dict, fmt: str, markdown_renderer, text_renderer) -> None:
    if fmt == "json":
        print(json.dumps(document, indent=2))
    elif fmt == "markdown":
        print(markdown_renderer(document))
    else:
        print(text_renderer(document))


def _pct(value: float) -> str:
    return f"{100.0 * value:.1f}%"


def _pp(value: float) -> str:
    return f"{value:+.1f}pp" if value else "0.0pp"


def _ci(low: float, high: float) -> str:
    return f"[{_pct(low)}, {_pct(high)}]"


def _markdown_score_report(doc: dict) -> str:
    lines = [
        f"# Score Report ({doc['parser']} parser)",
        "",
        f"- Records: {doc['n_total']}",
        f"- Threat accuracy (micro): {_pct(doc['micro_threat_accuracy'])}",
        f"- Threat accuracy (macro over {doc['macro_class_count']} classes): "
        f"{_pct(doc['macro_threat_accuracy'])}",
        f"- Severity accuracy: {_pct(doc['severity_accuracy'])}",
        f"- MITRE extraction rate: {_pct(doc['mitre_extraction_rate'])}",
        f"- Threat values extracted but unmapped: {doc['unmapped_threat_count']}",
        f"- Threat fields never extracted: {doc['absent_threat_count']}",
        "",
        f"## Per-Class Accuracy (N = {doc['n_total']})",
        "",
        f"| Category | n | Accuracy | {doc['confidence'] * 100:g}% CI |",
        "|---|---:|---:|---|",
    ]
    for entry in doc["per_class"]:
        lines.append(
            f"| {entry['name']} | {entry['n']} | {_pct(entry['accuracy'])} | "
            f"{_ci(entry['wilson_low'], entry['wilson_high'])} |"
        )
    if doc.get("failure_inspection"):
        flagged = [entry for entry in doc["failure_inspection"] if entry["flagged"]]
        lines += ["", "## Failure Inspection (classes below 50% accuracy)", ""]
        if flagged:
            lines += [
                "| Category | n | Accuracy | Wrong | Empty | Extraction |",
                "|---|---:|---:|---:|---:|---:|",
            ]
            for entry in flagged:
                counts = entry["failure_counts"]
                lines.append(
                    f"| {entry['name']} | {entry['n']} | {_pct(entry['accuracy'])} "
                    f"| {counts['wrong_prediction']} | {counts['empty_prediction']} "
                    f"| {counts['extraction_failure']} |"
                )
        else:
            lines.append("No class fell below the threshold.")
    if doc.get("metadata"):
        lines += ["", "## Run Metadata", ""]
        for key, value in doc["metadata"].items():
            lines.append(f"- {key}: {'(not documented)' if value is None else value}")
    return "\n".join(lines)


def _text_score_report(doc: dict) -> str:
    lines = [
        f"parser:                 {doc['parser']}",
        f"records:                {doc['n_total']}",
        f"threat accuracy micro:  {_pct(doc['micro_threat_accuracy'])}",
        f"threat accuracy macro:  {_pct(doc['macro_threat_accuracy'])} over {doc['macro_class_count']} classes",
        f"severity accuracy:      {_pct(doc['severity_accuracy'])}",
        f"mitre extraction rate:  {_pct(doc['mitre_extraction_rate'])}",
        "per-class:",
    ]
    for entry in doc["per_class"]:
        lines.append(
            f"  {entry['category']} {entry['name']}: {entry['correct']}/{entry['n']} "
            f"= {_pct(entry['accuracy'])} CI {_ci(entry['wilson_low'], entry['wilson_high'])}"
        )
    return "\n".join(lines)


def _markdown_comparison(doc: dict) -> str:
    strict, fuzzy = doc["strict"], doc["fuzzy"]
    lines = [
        f"# Parser Comparison (N = {fuzzy['n_total']}, same model outputs)",
        "",
        "| Metric | Strict | Fuzzy | Difference |",
        "|---|---:|---:|---:|",
        f"| Threat Accuracy | {_pct(strict['micro_threat_accuracy'])} "
        f"| {_pct(fuzzy['micro_threat_accuracy'])} | {_pp(doc['threat_delta_pp'])} |",
        f"| Severity Accuracy | {_pct(strict['severity_accuracy'])} "
        f"| {_pct(fuzzy['severity_accuracy'])} | {_pp(doc['severity_delta_pp'])} |",
        "",
        f"Records correct under fuzzy but never extracted under strict: {doc['suppressed_count']}",
        "",
        f"## Per-Class Accuracy Under Fuzzy Evaluation (N = {fuzzy['n_total']})",
        "",
        "| Category | n | Accuracy |",
        "|---|---:|---:|",
    ]
    for entry in fuzzy["per_class"]:
        lines.append(f"| {entry['name']} | {entry['n']} | {_pct(entry['accuracy'])} |")
    return "\n".join(lines)


def _text_comparison(doc: dict) -> str:
    strict, fuzzy = doc["strict"], doc["fuzzy"]
    return "\n".join(
        [
            f"records:           {fuzzy['n_total']}",
            f"threat accuracy:   strict {_pct(strict['micro_threat_accuracy'])}  "
            f"fuzzy {_pct(fuzzy['micro_threat_accuracy'])}  delta {_pp(doc['threat_delta_pp'])}",
            f"severity accuracy: strict {_pct(strict['severity_accuracy'])}  "
            f"fuzzy {_pct(fuzzy['severity_accuracy'])}  delta {_pp(doc['severity_delta_pp'])}",
            f"suppressed:        {doc['suppressed_count']}",
        ]
    )


def _markdown_compliance(doc: dict) -> str:
    def _status(flag: bool) -> str:
        return "pass" if flag else "FAIL"

    r1, r2, r3, r4 = doc["r1"], doc["r2"], doc["r3"], doc["r4"]
    lines = [
        "# Protocol Compliance",
        "",
        f"Overall: **{_status(doc['passed']).upper()}**",
        "",
        f"- R1 minimum evaluation size ({r1['min_per_class']}/class, {r1['min_total']} total): "
        f"{_status(r1['pass'])} (total {r1['total']})",
        f"- R2 fuzzy extraction is the primary metric: {_status(r2['pass'])} "
        f"(primary parser: {r2['primary_parser']})",
        f"- R3 failure inspection for low-accuracy classes: {_status(r3['pass'])}",
        f"- R4 evaluation metadata documented: {_status(r4['pass'])}",
    ]
    if r1["shortfalls"]:
        lines += ["", "## R1 shortfalls", ""]
        for item in r1["shortfalls"]:
            lines.append(f"- {item['category']} {item['name']}: n = {item['n']}")
    if r3["missing_breakdowns"]:
        lines += ["", "## R3 classes lacking failure breakdowns", ""]
        for category in r3["missing_breakdowns"]:
            lines.append(f"- {category}")
    if r4["missing_fields"]:
        lines += ["", "## R4 missing metadata fields", ""]
        for name in r4["missing_fields"]:
            lines.append(f"- {name}")
    return "\n".join(lines)


def _text_compliance(doc: dict) -> str:
    lines = [f"overall: {'pass' if doc['passed'] else 'fail'}"]
    for name in ("r1", "r2", "r3", "r4"):
        lines.append(f"{name}: {'pass' if doc[name]['pass'] else 'fail'}")
    if doc["r1"]["shortfalls"]:
        shortfall_text = ", ".join(f"{s['category']}={s['n']}" for s in doc["r1"]["shortfalls"])
        lines.append(f"r1 shortfalls: {shortfall_text}")
    if doc["r4"]["missing_fields"]:
        lines.append(f"r4 missing: {', '.join(doc['r4']['missing_fields'])}")
    return "\n".join(lines)


def _markdown_fuzz(doc: dict) -> str:
    lines = [
        f"# Extraction Recall over the Style Grid ({doc['samples_per_style']} samples/style)",
        "",
        "| Key case | Separator | Fuzzy threat | Fuzzy severity | Fuzzy mitre "
        "| Strict threat | Strict severity | Strict mitre |",
        "|---|---|---:|---:|---:|---:|---:|---:|",
    ]
    for style in doc["styles"]:
        fuzzy, strict = style["fuzzy"], style["strict"]
        lines.append(
            f"| {style['key_case']} | {style['separator']} "
            f"| {_pct(fuzzy['threat_recall'])} | {_pct(fuzzy['severity_recall'])} "
            f"| {_pct(fuzzy['mitre_recall'])} | {_pct(strict['threat_recall'])} "
            f"| {_pct(strict['severity_recall'])} | {_pct(strict['mitre_recall'])} |"
        )
    overall = doc["overall"]
    lines += [
        "",
        f"Overall fuzzy threat recall: {_pct(overall['fuzzy']['threat_recall'])}; "
        f"overall strict threat recall: {_pct(overall['strict']['threat_recall'])}",
    ]
    return "\n".join(lines)


def _text_fuzz(doc: dict) -> str:
    overall = doc["overall"]
    lines = [f"samples per style: {doc['samples_per_style']}  seed: {doc['seed']}"]
    for style in doc["styles"]:
        lines.append(
            f"{style['key_case']}+{style['separator']}: "
            f"fuzzy threat {_pct(style['fuzzy']['threat_recall'])}, "
            f"strict threat {_pct(style['strict']['threat_recall'])}"
        )
    lines.append(
        f"overall: fuzzy threat {_pct(overall['fuzzy']['threat_recall'])}, "
        f"strict threat {_pct(overall['strict']['threat_recall'])}"
    )
    return "\n".join(lines)


if __name__ == "__main__":
    raise SystemExit(main())
