"""Synthetic model-output rendering and the bundled 50-record reference fixture.

The renderer is the ground-truth oracle for the extractors: it produces text
in a controlled field-name/separator/casing style, so round-trip tests know
exactly what a parser should recover. The reference fixture is a fully
synthetic dataset demonstrating extraction-induced score suppression end to
end; its per-record texts are constructed, not captured model output.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .extraction import LOOP_MARKER
from .scoring import GroundTruthRecord
from .taxonomy import CanonicalCategory, SeverityLevel

FIXTURE_DIR_NAME = "reference_n50"

_FILLER_LINE = '10.0.3.17 - - [12/Feb/2025:09:14:02 +0000] "GET /index.html HTTP/1.1" 200 4821'


class KeyCase(enum.Enum):
    """The five field-name casings a tolerant parser must accept."""

    UPPER_SNAKE = "upper_snake"
    TITLE_SPACE = "title_space"
    TITLE_HYPHEN = "title_hyphen"
    LOWER_SNAKE = "lower_snake"
    TITLE_UNDERSCORE = "title_underscore"


class Separator(enum.Enum):
    COLON = "colon"
    HYPHEN = "hyphen"
    EQUALS = "equals"


@dataclass(frozen=True)
class FormatStyle:
    key_case: KeyCase
    separator: Separator
    include_loop: bool = False
    omit_fields: frozenset[str] = frozenset()


_FIELD_WORDS = {
    "threat": ("Threat", "Type"),
    "severity": ("Severity",),
    "mitre": ("MITRE", "Technique", "ID"),
}

_SEPARATOR_RENDER = {
    Separator.COLON: ": ",
    Separator.HYPHEN: " - ",
    Separator.EQUALS: " = ",
}


def render_key(field: str, key_case: KeyCase) -> str:
    words = _FIELD_WORDS[field]
    if key_case is KeyCase.UPPER_SNAKE:
        return "_".join(word.upper() for word in words)
    if key_case is KeyCase.LOWER_SNAKE:
        return "_".join(word.lower() for word in words)
    if key_case is KeyCase.TITLE_SPACE:
        return " ".join(words)
    if key_case is KeyCase.TITLE_HYPHEN:
        return "-".join(words)
    return "_".join(words)


def render_output(truth: GroundTruthRecord, style: FormatStyle, seed: int) -> str:
    """Render one styled model output for the given truth record.

    Byte-identical for identical (truth, style, seed) triples. The loop
    block, when requested, repeats a fixed keyless pseudo-log line after the
    marker so only the marker position matters to truncation.
    """
    rng = random.Random(
        f"{seed}|{truth.id}|{style.key_case.value}|{style.separator.value}|{style.include_loop}"
    )
    values = {
        "threat": truth.category.display_name,
        "severity": truth.severity.name.title(),
        "mitre": truth.mitre_technique,
    }
    separator = _SEPARATOR_RENDER[style.separator]
    lines = []
    for field in ("threat", "severity", "mitre"):
        value = values[field]
        if field in style.omit_fields or value is None:
            continue
        if style.key_case is KeyCase.UPPER_SNAKE:
            value = value.upper()
        lines.append(f"{render_key(field, style.key_case)}{separator}{value}")
    if style.include_loop:
        lines.append(f"{LOOP_MARKER} {_FILLER_LINE}")
        lines.extend([_FILLER_LINE] * rng.randint(2, 5))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Reference fixture
# ---------------------------------------------------------------------------

# Skewed small-benchmark class sizes: 13 source labels mapped one-to-one onto
# the 13 canonical categories, totals fixed at 50.
_FIXTURE_CLASS_COUNTS = {
    CanonicalCategory.SQL_INJECTION: 8,
    CanonicalCategory.CROSS_SITE_SCRIPTING: 1,
    CanonicalCategory.COMMAND_INJECTION: 1,
    CanonicalCategory.PATH_TRAVERSAL: 4,
    CanonicalCategory.LOCAL_FILE_INCLUSION: 3,
    CanonicalCategory.BRUTE_FORCE: 4,
    CanonicalCategory.CREDENTIAL_STUFFING: 4,
    CanonicalCategory.RECONNAISSANCE: 4,
    CanonicalCategory.DENIAL_OF_SERVICE: 4,
    CanonicalCategory.DATA_EXFILTRATION: 7,
    CanonicalCategory.LATERAL_MOVEMENT: 4,
    CanonicalCategory.MALWARE_C2: 5,
    CanonicalCategory.NO_THREAT: 1,
}

# The three behaviorally adjacent classes keep confusing each other; every
# record in them predicts the mapped wrong neighbor.
_FIXTURE_CONFUSIONS = {
    CanonicalCategory.RECONNAISSANCE: CanonicalCategory.BRUTE_FORCE,
    CanonicalCategory.BRUTE_FORCE: CanonicalCategory.CREDENTIAL_STUFFING,
    CanonicalCategory.CREDENTIAL_STUFFING: CanonicalCategory.BRUTE_FORCE,
}

_FIXTURE_TECHNIQUES = {
    CanonicalCategory.SQL_INJECTION: "T1190",
    CanonicalCategory.CROSS_SITE_SCRIPTING: "T1059.007",
    CanonicalCategory.COMMAND_INJECTION: "T1059",
    CanonicalCategory.PATH_TRAVERSAL: "T1083",
    CanonicalCategory.LOCAL_FILE_INCLUSION: "T1190",
    CanonicalCategory.BRUTE_FORCE: "T1110",
    CanonicalCategory.CREDENTIAL_STUFFING: "T1110.004",
    CanonicalCategory.RECONNAISSANCE: "T1595",
    CanonicalCategory.DENIAL_OF_SERVICE: "T1498",
    CanonicalCategory.DATA_EXFILTRATION: "T1041",
    CanonicalCategory.LATERAL_MOVEMENT: "T1021",
    CanonicalCategory.MALWARE_C2: "T1071",
    CanonicalCategory.NO_THREAT: None,
}

_SEVERITY_CYCLE = (
    SeverityLevel.HIGH,
    SeverityLevel.CRITICAL,
    SeverityLevel.MEDIUM,
    SeverityLevel.LOW,
)

_FIXTURE_SIZE = 50
_FIXTURE_SEVERITY_MISMATCHES = 21


def _severity_mismatch_indices() -> set[int]:
    # Walk residues mod 5 in order, marking indices until the mismatch budget
    # is spent: residues 0 and 1 cover 20 records, residue 2 supplies the 21st.
    marked: set[int] = set()
    for residue in range(5):
        for index in range(residue, _FIXTURE_SIZE, 5):
            if len(marked) == _FIXTURE_SEVERITY_MISMATCHES:
                return marked
            marked.add(index)
    return marked


def build_reference_fixture() -> tuple[list[GroundTruthRecord], dict[str, str]]:
    """Build the deterministic 50-record ground truth and raw-output pair.

    All outputs use the title-case-with-spaces key style and colon separator
    (the format the exact-key parser cannot match on the threat field), so
    strict scoring collapses to 0% while fuzzy scoring recovers 76%. The
    twelve records in the three confused classes carry prompt-repetition
    loops after their fields, the generation artifact typical of hard
    classes.
    """
    mismatch_at = _severity_mismatch_indices()
    style_plain = FormatStyle(KeyCase.TITLE_SPACE, Separator.COLON)
    style_loop = FormatStyle(KeyCase.TITLE_SPACE, Separator.COLON, include_loop=True)

    truths: list[GroundTruthRecord] = []
    raws: dict[str, str] = {}
    index = 0
    for category in CanonicalCategory:
        for _ in range(_FIXTURE_CLASS_COUNTS[category]):
            record_id = f"n50-{index + 1:03d}"
            truth_severity = _SEVERITY_CYCLE[index % 4]
            truth = GroundTruthRecord(
                id=record_id,
                category=category,
                severity=truth_severity,
                mitre_technique=_FIXTURE_TECHNIQUES[category],
            )
            truths.append(truth)

            predicted_category = _FIXTURE_CONFUSIONS.get(category, category)
            predicted_severity = (
                _SEVERITY_CYCLE[(index + 1) % 4] if index in mismatch_at else truth_severity
            )
            predicted = GroundTruthRecord(
                id=record_id,
                category=predicted_category,
                severity=predicted_severity,
                mitre_technique=truth.mitre_technique,
            )
            style = style_loop if category in _FIXTURE_CONFUSIONS else style_plain
            raws[record_id] = render_output(predicted, style, seed=index)
            index += 1
    return truths, raws


def write_fixture(out_dir: Path | str) -> tuple[Path, Path]:
    """Write the fixture pair under <out_dir>/reference_n50/; returns the two paths."""
    truths, raws = build_reference_fixture()
    target = Path(out_dir) / FIXTURE_DIR_NAME
    target.mkdir(parents=True, exist_ok=True)

    ground_truth_path = target / "ground_truth.json"
    predictions_path = target / "predictions.json"

    ground_truth = [
        {
            "id": truth.id,
            "category": truth.category.value,
            "severity": truth.severity.name,
            "mitre_technique": truth.mitre_technique,
        }
        for truth in truths
    ]
    predictions = [{"id": truth.id, "raw_output": raws[truth.id]} for truth in truths]

    ground_truth_path.write_text(json.dumps(ground_truth, indent=2) + "\n", encoding="utf-8")
    predictions_path.write_text(json.dumps(predictions, indent=2) + "\n", encoding="utf-8")
    return ground_truth_path, predictions_path
