"""Diagnostic reports that make silent parser failures visible.

Three audit surfaces: side-by-side parser comparison on identical outputs,
per-record failure triage (wrong vs. empty vs. extraction failure), and the
R1-R4 protocol compliance checks.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace

from .extraction import Parser, truncate_loops
from .scoring import EvalRecord, GroundTruthRecord, ScoreReport, score_dataset, score_record
from .taxonomy import CanonicalCategory, KeywordTable

MIN_EXAMPLES_PER_CLASS = 20
MIN_TOTAL_EXAMPLES = 260
LOW_ACCURACY_THRESHOLD = 0.5

# Field names a compliant run must document.
METADATA_FIELDS = (
    "max_new_tokens",
    "temperature",
    "do_sample",
    "parser_type",
    "normalization_version",
    "post_processing",
)


class FailureKind(enum.Enum):
    """Triage label for a record whose threat prediction scored incorrect."""

    WRONG_PREDICTION = "wrong_prediction"
    EMPTY_PREDICTION = "empty_prediction"
    EXTRACTION_FAILURE = "extraction_failure"


class AlignmentError(ValueError):
    """Ground truth and predictions do not cover the same record ids."""

    def __init__(self, missing_in_raws: list[str], missing_in_truth: list[str]):
        self.missing_in_raws = missing_in_raws
        self.missing_in_truth = missing_in_truth
        parts = []
        if missing_in_raws:
            parts.append(f"ids missing from predictions: {', '.join(missing_in_raws)}")
        if missing_in_truth:
            parts.append(f"ids missing from ground truth: {', '.join(missing_in_truth)}")
        super().__init__("; ".join(parts))


@dataclass(frozen=True)
class RunMetadata:
    """R4 documentation block embedded in every report.

    parser_type and normalization_version are always known to the tool and
    therefore mandatory; the inference-side fields can only come from the
    caller and are validated for presence by the R4 check.
    """

    parser_type: Parser
    normalization_version: str
    max_new_tokens: int | None = None
    temperature: float | None = None
    do_sample: bool | None = None
    post_processing: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "max_new_tokens": self.max_new_tokens,
            "temperature": self.temperature,
            "do_sample": self.do_sample,
            "parser_type": self.parser_type.value,
            "normalization_version": self.normalization_version,
            "post_processing": list(self.post_processing) if self.post_processing is not None else None,
        }


@dataclass(frozen=True)
class ClassFailureBreakdown:
    """Per-class failure triage; kind counts are emitted only for flagged classes."""

    category: CanonicalCategory
    n: int
    correct: int
    accuracy: float
    flagged: bool
    failure_counts: dict[FailureKind, int] | None

    def to_dict(self) -> dict:
        return {
            "category": self.category.value,
            "name": self.category.display_name,
            "n": self.n,
            "correct": self.correct,
            "accuracy": self.accuracy,
            "flagged": self.flagged,
            "failure_counts": (
                {kind.value: self.failure_counts[kind] for kind in FailureKind}
                if self.failure_counts is not None
                else None
            ),
        }


@dataclass(frozen=True)
class SuppressionReport:
    """Strict vs. fuzzy comparison over identical model outputs.

    The deltas are in percentage points; suppressed_count is the number of
    records the fuzzy parser scored correct while the strict parser never
    extracted a threat field at all.
    """

    strict_report: ScoreReport
    fuzzy_report: ScoreReport
    threat_delta_pp: float
    severity_delta_pp: float
    suppressed_count: int

    def to_dict(self) -> dict:
        return {
            "threat_delta_pp": self.threat_delta_pp,
            "severity_delta_pp": self.severity_delta_pp,
            "suppressed_count": self.suppressed_count,
            "strict": self.strict_report.to_dict(),
            "fuzzy": self.fuzzy_report.to_dict(),
        }


@dataclass(frozen=True)
class ComplianceResult:
    """Outcome of the four protocol requirement checks. Failures are results, not errors."""

    r1_pass: bool
    r1_total: int
    r1_shortfalls: tuple[tuple[CanonicalCategory, int], ...]
    r2_pass: bool
    primary_parser: Parser
    r3_pass: bool
    r3_missing: tuple[CanonicalCategory, ...]
    r4_pass: bool
    r4_missing: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.r1_pass and self.r2_pass and self.r3_pass and self.r4_pass

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "r1": {
                "pass": self.r1_pass,
                "total": self.r1_total,
                "min_per_class": MIN_EXAMPLES_PER_CLASS,
                "min_total": MIN_TOTAL_EXAMPLES,
                "shortfalls": [
                    {"category": category.value, "name": category.display_name, "n": n}
                    for category, n in self.r1_shortfalls
                ],
            },
            "r2": {"pass": self.r2_pass, "primary_parser": self.primary_parser.value},
            "r3": {
                "pass": self.r3_pass,
                "missing_breakdowns": [category.value for category in self.r3_missing],
            },
            "r4": {"pass": self.r4_pass, "missing_fields": list(self.r4_missing)},
        }


def check_alignment(
    truths: Sequence[GroundTruthRecord], raws_by_id: Mapping[str, str]
) -> None:
    """Raise AlignmentError unless truth ids and prediction ids match exactly."""
    truth_ids = {t.id for t in truths}
    raw_ids = set(raws_by_id)
    if truth_ids != raw_ids:
        raise AlignmentError(
            missing_in_raws=sorted(truth_ids - raw_ids),
            missing_in_truth=sorted(raw_ids - truth_ids),
        )


def classify_failure(record: EvalRecord) -> FailureKind:
    """Triage one incorrectly scored record.

    Empty output (after loop truncation) is a generation failure; a non-empty
    output with no extracted threat field is the parser's failure; anything
    else is a genuinely wrong prediction (unmappable values included).
    """
    if record.threat_correct:
        raise ValueError(f"record {record.id} scored correct; nothing to classify")
    if not truncate_loops(record.raw).strip():
        return FailureKind.EMPTY_PREDICTION
    if record.extracted.threat_raw is None:
        return FailureKind.EXTRACTION_FAILURE
    return FailureKind.WRONG_PREDICTION


def inspect_failures(
    records: Sequence[EvalRecord], threshold: float = LOW_ACCURACY_THRESHOLD
) -> tuple[ClassFailureBreakdown, ...]:
    """Per-class failure breakdown for every class below the accuracy threshold.

    Classes at or above the threshold report totals only; nothing is ever
    silently dropped from the summary.
    """
    by_class: dict[CanonicalCategory, list[EvalRecord]] = {}
    for record in records:
        by_class.setdefault(record.truth.category, []).append(record)

    breakdown = []
    for category in sorted(by_class, key=lambda c: c.value):
        class_records = by_class[category]
        n = len(class_records)
        correct = sum(r.threat_correct for r in class_records)
        accuracy = correct / n
        flagged = accuracy < threshold
        counts: dict[FailureKind, int] | None = None
        if flagged:
            counts = {kind: 0 for kind in FailureKind}
            for record in class_records:
                if not record.threat_correct:
                    counts[classify_failure(record)] += 1
        breakdown.append(
            ClassFailureBreakdown(
                category=category,
                n=n,
                correct=correct,
                accuracy=accuracy,
                flagged=flagged,
                failure_counts=counts,
            )
        )
    return tuple(breakdown)


def evaluate_outputs(
    truths: Sequence[GroundTruthRecord],
    raws_by_id: Mapping[str, str],
    parser: Parser,
    table: KeywordTable | None = None,
    confidence: float = 0.95,
    metadata: RunMetadata | None = None,
) -> tuple[list[EvalRecord], ScoreReport]:
    """Score a full run under one parser, with the failure breakdown embedded."""
    if table is None:
        table = KeywordTable.default()
    check_alignment(truths, raws_by_id)
    if metadata is None:
        metadata = build_run_metadata(parser, table)
    records = [score_record(truth, raws_by_id[truth.id], parser, table) for truth in truths]
    report = score_dataset(records, confidence=confidence, metadata=metadata)
    report = replace(report, failure_breakdown=inspect_failures(records))
    return records, report


def compare_parsers(
    truths: Sequence[GroundTruthRecord],
    raws_by_id: Mapping[str, str],
    table: KeywordTable | None = None,
    confidence: float = 0.95,
    metadata: RunMetadata | None = None,
) -> SuppressionReport:
    """Score identical raw outputs under both parsers and report the deltas.

    The model is never re-run; only the interpretation of its existing
    outputs changes between the two reports.
    """
    if table is None:
        table = KeywordTable.default()
    check_alignment(truths, raws_by_id)

    def _metadata_for(parser: Parser) -> RunMetadata:
        if metadata is None:
            return build_run_metadata(parser, table)
        return replace(metadata, parser_type=parser, post_processing=_post_processing(parser))

    strict_records, strict_report = evaluate_outputs(
        truths, raws_by_id, Parser.STRICT, table, confidence, _metadata_for(Parser.STRICT)
    )
    fuzzy_records, fuzzy_report = evaluate_outputs(
        truths, raws_by_id, Parser.FUZZY, table, confidence, _metadata_for(Parser.FUZZY)
    )

    strict_by_id = {record.id: record for record in strict_records}
    suppressed = sum(
        record.threat_correct and strict_by_id[record.id].predicted_category is None
        for record in fuzzy_records
    )
    n = len(truths)
    # Deltas are computed from integer counts so ratios of whole percentage
    # points stay exact in floating point.
    threat_delta = 100.0 * (fuzzy_report.threat_correct_count - strict_report.threat_correct_count) / n
    severity_delta = (
        100.0 * (fuzzy_report.severity_correct_count - strict_report.severity_correct_count) / n
    )
    return SuppressionReport(
        strict_report=strict_report,
        fuzzy_report=fuzzy_report,
        threat_delta_pp=threat_delta,
        severity_delta_pp=severity_delta,
        suppressed_count=suppressed,
    )


def _post_processing(parser: Parser) -> tuple[str, ...]:
    if parser is Parser.FUZZY:
        return ("loop truncation at first '### Input:' marker",)
    return ()


def build_run_metadata(
    parser: Parser,
    table: KeywordTable | None = None,
    overrides: Mapping[str, object] | None = None,
) -> RunMetadata:
    """Assemble the R4 block: tool-owned fields filled in, caller fields merged.

    Raises ValueError when caller-supplied parser_type or normalization
    version contradicts what actually ran.
    """
    if table is None:
        table = KeywordTable.default()
    overrides = dict(overrides or {})
    declared_parser = overrides.pop("parser_type", None)
    if declared_parser is not None and str(declared_parser) != parser.value:
        raise ValueError(
            f"metadata declares parser_type={declared_parser!r} but the run used {parser.value!r}"
        )
    declared_version = overrides.pop("normalization_version", None)
    if declared_version is not None and str(declared_version) != table.version:
        raise ValueError(
            f"metadata declares normalization_version={declared_version!r} "
            f"but the loaded keyword table is {table.version!r}"
        )
    post_processing = overrides.pop("post_processing", None)
    if post_processing is None:
        post_processing = _post_processing(parser)
    else:
        post_processing = tuple(str(step) for step in post_processing)

    known = {}
    for name in ("max_new_tokens", "temperature", "do_sample"):
        if name in overrides:
            known[name] = overrides.pop(name)
    if overrides:
        raise ValueError(f"unknown metadata fields: {', '.join(sorted(map(str, overrides)))}")
    return RunMetadata(
        parser_type=parser,
        normalization_version=table.version,
        post_processing=post_processing,
        **known,
    )


def check_compliance(
    truths: Sequence[GroundTruthRecord],
    metadata: RunMetadata | Mapping[str, object] | None,
    primary_parser: Parser,
    report: ScoreReport | None = None,
) -> ComplianceResult:
    """Evaluate the four protocol requirements for a run.

    R1 counts every canonical category, so categories absent from the ground
    truth show up as n=0 shortfalls. R3 can only be verified against a scored
    report; without one it passes vacuously.
    """
    counts = {category: 0 for category in CanonicalCategory}
    for truth in truths:
        counts[truth.category] += 1
    total = len(truths)
    shortfalls = tuple(
        (category, counts[category])
        for category in CanonicalCategory
        if counts[category] < MIN_EXAMPLES_PER_CLASS
    )
    r1_pass = not shortfalls and total >= MIN_TOTAL_EXAMPLES

    r2_pass = primary_parser is Parser.FUZZY

    r3_missing: tuple[CanonicalCategory, ...] = ()
    if report is not None:
        with_counts = {
            entry.category
            for entry in (report.failure_breakdown or ())
            if entry.failure_counts is not None
        }
        r3_missing = tuple(
            entry.category
            for entry in report.per_class
            if entry.accuracy < LOW_ACCURACY_THRESHOLD and entry.category not in with_counts
        )
    r3_pass = not r3_missing

    present = _metadata_fields_present(metadata)
    r4_missing = tuple(name for name in METADATA_FIELDS if name not in present)
    r4_pass = not r4_missing

    return ComplianceResult(
        r1_pass=r1_pass,
        r1_total=total,
        r1_shortfalls=shortfalls,
        r2_pass=r2_pass,
        primary_parser=primary_parser,
        r3_pass=r3_pass,
        r3_missing=r3_missing,
        r4_pass=r4_pass,
        r4_missing=r4_missing,
    )


def _metadata_fields_present(metadata: RunMetadata | Mapping[str, object] | None) -> set[str]:
    if metadata is None:
        return set()
    if isinstance(metadata, RunMetadata):
        values = metadata.to_dict()
    else:
        values = dict(metadata)
    return {name for name in METADATA_FIELDS if values.get(name) is not None}
