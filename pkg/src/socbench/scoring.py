"""Accuracy metrics, MITRE extraction rate, and Wilson intervals over scored records."""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import TYPE_CHECKING

from .extraction import ExtractedFields, Parser, extract
from .taxonomy import (
    UNMAPPED,
    CanonicalCategory,
    KeywordTable,
    SeverityLevel,
    Unmapped,
    normalize_severity,
    normalize_threat,
)

if TYPE_CHECKING:
    from .audit import ClassFailureBreakdown, RunMetadata


@dataclass(frozen=True)
class GroundTruthRecord:
    """One labeled evaluation example."""

    id: str
    category: CanonicalCategory
    severity: SeverityLevel
    mitre_technique: str | None = None


@dataclass(frozen=True)
class EvalRecord:
    """Joined unit of scoring: truth, raw output, extraction, and outcome.

    predicted_* is None when the parser never found the field (Absent) and
    UNMAPPED when it found a value no rule could map; both score incorrect
    but are tallied separately.
    """

    id: str
    truth: GroundTruthRecord
    raw: str
    extracted: ExtractedFields
    predicted_category: CanonicalCategory | Unmapped | None
    predicted_severity: SeverityLevel | Unmapped | None
    threat_correct: bool
    severity_correct: bool


@dataclass(frozen=True)
class ClassScore:
    category: CanonicalCategory
    n: int
    correct: int
    accuracy: float
    wilson_low: float
    wilson_high: float

    def to_dict(self) -> dict:
        return {
            "category": self.category.value,
            "name": self.category.display_name,
            "n": self.n,
            "correct": self.correct,
            "accuracy": self.accuracy,
            "wilson_low": self.wilson_low,
            "wilson_high": self.wilson_high,
        }


@dataclass(frozen=True)
class ScoreReport:
    """Full metric bundle for one parser over one dataset."""

    n_total: int
    parser: Parser
    confidence: float
    threat_correct_count: int
    severity_correct_count: int
    micro_threat_accuracy: float
    macro_threat_accuracy: float
    macro_class_count: int
    severity_accuracy: float
    mitre_extraction_rate: float
    unmapped_threat_count: int
    absent_threat_count: int
    per_class: tuple[ClassScore, ...]
    metadata: RunMetadata | None = None
    failure_breakdown: tuple[ClassFailureBreakdown, ...] | None = None

    def to_dict(self) -> dict:
        data = {
            "n_total": self.n_total,
            "parser": self.parser.value,
            "confidence": self.confidence,
            "threat_correct_count": self.threat_correct_count,
            "severity_correct_count": self.severity_correct_count,
            "micro_threat_accuracy": self.micro_threat_accuracy,
            "macro_threat_accuracy": self.macro_threat_accuracy,
            "macro_class_count": self.macro_class_count,
            "severity_accuracy": self.severity_accuracy,
            "mitre_extraction_rate": self.mitre_extraction_rate,
            "unmapped_threat_count": self.unmapped_threat_count,
            "absent_threat_count": self.absent_threat_count,
            "per_class": [entry.to_dict() for entry in self.per_class],
        }
        data["failure_inspection"] = (
            [entry.to_dict() for entry in self.failure_breakdown]
            if self.failure_breakdown is not None
            else None
        )
        data["metadata"] = self.metadata.to_dict() if self.metadata is not None else None
        return data


def wilson_interval(correct: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Uses the score-inversion closed form

        center = (p + z^2/2n) / (1 + z^2/n)
        half   = z / (1 + z^2/n) * sqrt(p(1-p)/n + z^2/4n^2)

    with z the two-sided normal quantile for the given confidence, endpoints
    clamped to [0, 1]. Well-behaved at extreme counts like 0/n and n/n,
    unlike the Wald approximation.
    """
    if n < 1:
        raise ValueError("empty class: n must be >= 1")
    if correct < 0 or correct > n:
        raise ValueError(f"invalid counts: correct={correct} must be within [0, {n}]")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    z = NormalDist().inv_cdf((1.0 + confidence) / 2.0)
    p = correct / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    return max(0.0, center - half), min(1.0, center + half)


def score_record(
    truth: GroundTruthRecord,
    raw: str,
    parser: Parser,
    table: KeywordTable | None = None,
) -> EvalRecord:
    """Run the selected extractor on one raw output and score it against truth.

    MITRE counts as extracted whenever the parser found the field, regardless
    of content: the metric is an extraction rate, not correctness.
    """
    if table is None:
        table = KeywordTable.default()
    extracted = extract(raw, parser)

    predicted_category: CanonicalCategory | Unmapped | None = None
    if extracted.threat_raw is not None:
        predicted_category = normalize_threat(extracted.threat_raw, table)

    predicted_severity: SeverityLevel | Unmapped | None = None
    if extracted.severity_raw is not None:
        predicted_severity = normalize_severity(extracted.severity_raw)

    return EvalRecord(
        id=truth.id,
        truth=truth,
        raw=raw,
        extracted=extracted,
        predicted_category=predicted_category,
        predicted_severity=predicted_severity,
        threat_correct=predicted_category == truth.category,
        severity_correct=predicted_severity == truth.severity,
    )


def score_dataset(
    records: list[EvalRecord] | tuple[EvalRecord, ...],
    confidence: float = 0.95,
    metadata: RunMetadata | None = None,
) -> ScoreReport:
    """Aggregate scored records into a full report.

    Macro accuracy averages over the categories present in ground truth; the
    actual denominator is reported alongside so readers can tell when fewer
    than all 13 categories were covered.
    """
    if not records:
        raise ValueError("empty dataset: nothing to score")
    parsers = {record.extracted.parser for record in records}
    if len(parsers) != 1:
        raise ValueError(f"mixed parsers in dataset: {sorted(p.value for p in parsers)}")
    (parser,) = parsers

    n_total = len(records)
    by_class: dict[CanonicalCategory, list[EvalRecord]] = {}
    for record in records:
        by_class.setdefault(record.truth.category, []).append(record)

    per_class = []
    for category in sorted(by_class, key=lambda c: c.value):
        class_records = by_class[category]
        n = len(class_records)
        correct = sum(r.threat_correct for r in class_records)
        low, high = wilson_interval(correct, n, confidence)
        per_class.append(
            ClassScore(
                category=category,
                n=n,
                correct=correct,
                accuracy=correct / n,
                wilson_low=low,
                wilson_high=high,
            )
        )

    threat_correct = sum(r.threat_correct for r in records)
    severity_correct = sum(r.severity_correct for r in records)
    return ScoreReport(
        n_total=n_total,
        parser=parser,
        confidence=confidence,
        threat_correct_count=threat_correct,
        severity_correct_count=severity_correct,
        micro_threat_accuracy=threat_correct / n_total,
        macro_threat_accuracy=sum(c.accuracy for c in per_class) / len(per_class),
        macro_class_count=len(per_class),
        severity_accuracy=severity_correct / n_total,
        mitre_extraction_rate=sum(r.extracted.mitre_raw is not None for r in records) / n_total,
        unmapped_threat_count=sum(r.predicted_category is UNMAPPED for r in records),
        absent_threat_count=sum(r.predicted_category is None for r in records),
        per_class=tuple(per_class),
        metadata=metadata,
    )
