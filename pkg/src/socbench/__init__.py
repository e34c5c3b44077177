"""Parser-audit and scoring toolkit for LLM-based security-log threat classification.

Scores structured-field predictions against canonical labels under two field
extractors (exact-key and format-tolerant), quantifies how much accuracy an
extraction pipeline silently destroys, and checks runs against the R1-R4
evaluation protocol.
"""

from .audit import (
    AlignmentError,
    ClassFailureBreakdown,
    ComplianceResult,
    FailureKind,
    RunMetadata,
    SuppressionReport,
    build_run_metadata,
    check_compliance,
    classify_failure,
    compare_parsers,
    evaluate_outputs,
    inspect_failures,
)
from .cli import load_ground_truth, load_predictions
from .extraction import (
    LOOP_MARKER,
    ExtractedFields,
    Parser,
    extract,
    fuzzy_extract,
    strict_extract,
    truncate_loops,
)
from .scoring import (
    ClassScore,
    EvalRecord,
    GroundTruthRecord,
    ScoreReport,
    score_dataset,
    score_record,
    wilson_interval,
)
from .synthgen import (
    FormatStyle,
    KeyCase,
    Separator,
    build_reference_fixture,
    render_output,
    write_fixture,
)
from .taxonomy import (
    UNMAPPED,
    CanonicalCategory,
    KeywordTable,
    SeverityLevel,
    Unmapped,
    normalize_severity,
    normalize_threat,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "CanonicalCategory",
    "ClassFailureBreakdown",
    "ClassScore",
    "ComplianceResult",
    "EvalRecord",
    "ExtractedFields",
    "FailureKind",
    "FormatStyle",
    "GroundTruthRecord",
    "KeyCase",
    "KeywordTable",
    "LOOP_MARKER",
    "Parser",
    "RunMetadata",
    "ScoreReport",
    "Separator",
    "SeverityLevel",
    "SuppressionReport",
    "UNMAPPED",
    "Unmapped",
    "build_reference_fixture",
    "build_run_metadata",
    "check_compliance",
    "classify_failure",
    "compare_parsers",
    "evaluate_outputs",
    "extract",
    "fuzzy_extract",
    "inspect_failures",
    "load_ground_truth",
    "load_predictions",
    "normalize_severity",
    "normalize_threat",
    "render_output",
    "score_dataset",
    "score_record",
    "strict_extract",
    "truncate_loops",
    "wilson_interval",
    "write_fixture",
]
