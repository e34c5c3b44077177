"""Strict and fuzzy field extractors for free-form model output.

The strict extractor is keyed to exact underscore field names and silently
misses every formatting variant; the fuzzy extractor tolerates the field-name
and separator variation real models produce. Running both over the same text
is what makes extraction-induced scoring loss measurable.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

# Prompt-repetition echoes start at this marker; the fuzzy path cuts there.
LOOP_MARKER = "### Input:"


class Parser(enum.Enum):
    STRICT = "strict"
    FUZZY = "fuzzy"


@dataclass(frozen=True)
class ExtractedFields:
    """Raw field values recovered from one model output, before normalization.

    A None field means the parser found nothing for it; present values are
    non-empty after trimming.
    """

    parser: Parser
    threat_raw: str | None = None
    severity_raw: str | None = None
    mitre_raw: str | None = None
    truncated_at_marker: bool = False


_FIELDS = ("threat", "severity", "mitre")

# Exact-key patterns: the value class is "anything but newline or comma".
# The separator run [:\s]+ accepts bare whitespace, so a missing colon does
# not stop extraction -- only a mismatched key does.
_STRICT_PATTERNS = {
    "threat": re.compile(r"THREAT_TYPE[:\s]+([^\n,]+)", re.IGNORECASE),
    "severity": re.compile(r"SEVERITY[:\s]+([^\n,]+)", re.IGNORECASE),
    "mitre": re.compile(r"MITRE_ID[:\s]+([^\n,]+)", re.IGNORECASE),
}

# Tolerant key shapes: space/underscore/hyphen runs are interchangeable inside
# a key. The mitre key also accepts the bare "mitre id" form so the fuzzy
# pattern language is a strict superset of the exact-key language per field.
_FUZZY_KEYS = {
    "threat": r"threat[ _\-]*type",
    "severity": r"severity",
    "mitre": r"mitre[ _\-]*(?:technique(?:[ _\-]*id)?|id)",
}

# Explicit = / - separators are tried before the colon-or-whitespace run so
# "key = value" never leaves the "=" glued to the value. The second branch
# mirrors the strict separator, keeping the superset property.
_SEPARATOR = r"(?:\s*[=\-]\s*|[:\s]+)"


def _compile_fuzzy(value_class: str) -> dict[str, re.Pattern[str]]:
    return {
        field: re.compile(key + _SEPARATOR + f"({value_class})", re.IGNORECASE)
        for field, key in _FUZZY_KEYS.items()
    }


_FUZZY_PATTERNS = _compile_fuzzy(r"[^\n]+")
# Divergence knob: stop fuzzy values at commas exactly like the strict capture.
_FUZZY_PATTERNS_COMMA_STOP = _compile_fuzzy(r"[^\n,]+")


def truncate_loops(text: str) -> str:
    """Return the prefix strictly before the first loop marker, if any."""
    index = text.find(LOOP_MARKER)
    return text if index < 0 else text[:index]


def strict_extract(text: str) -> ExtractedFields:
    """Extract fields with the exact-key parser.

    Absent fields stay absent; no error, no flag. Values are trimmed and
    upper-cased. No loop truncation is applied.
    """
    values: dict[str, str | None] = {}
    for field in _FIELDS:
        match = _STRICT_PATTERNS[field].search(text)
        value = match.group(1).strip().upper() if match else ""
        values[field] = value or None
    return ExtractedFields(
        parser=Parser.STRICT,
        threat_raw=values["threat"],
        severity_raw=values["severity"],
        mitre_raw=values["mitre"],
        truncated_at_marker=False,
    )


def fuzzy_extract(text: str, *, value_stop_at_comma: bool = False) -> ExtractedFields:
    """Extract fields with the format-tolerant parser.

    Applies loop truncation first, then matches each field's tolerant key
    pattern; the first occurrence per field wins. Values are captured to end
    of line and returned as written (case preserved); normalization is the
    taxonomy module's job.
    """
    truncated = LOOP_MARKER in text
    body = truncate_loops(text)
    patterns = _FUZZY_PATTERNS_COMMA_STOP if value_stop_at_comma else _FUZZY_PATTERNS
    values: dict[str, str | None] = {}
    for field in _FIELDS:
        match = patterns[field].search(body)
        value = match.group(1).strip() if match else ""
        values[field] = value or None
    return ExtractedFields(
        parser=Parser.FUZZY,
        threat_raw=values["threat"],
        severity_raw=values["severity"],
        mitre_raw=values["mitre"],
        truncated_at_marker=truncated,
    )


def extract(text: str, parser: Parser) -> ExtractedFields:
    """Dispatch to the selected extractor."""
    if parser is Parser.STRICT:
        return strict_extract(text)
    return fuzzy_extract(text)
