"""Canonical threat taxonomy, severity levels, and keyword-driven value normalization."""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path


class CanonicalCategory(enum.Enum):
    """The 13 broad threat categories, keyed by their stable SB identifiers."""

    SQL_INJECTION = "SB-01"
    CROSS_SITE_SCRIPTING = "SB-02"
    COMMAND_INJECTION = "SB-03"
    PATH_TRAVERSAL = "SB-04"
    LOCAL_FILE_INCLUSION = "SB-05"
    BRUTE_FORCE = "SB-06"
    CREDENTIAL_STUFFING = "SB-07"
    RECONNAISSANCE = "SB-08"
    DENIAL_OF_SERVICE = "SB-09"
    DATA_EXFILTRATION = "SB-10"
    LATERAL_MOVEMENT = "SB-11"
    MALWARE_C2 = "SB-12"
    NO_THREAT = "SB-13"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @classmethod
    def resolve(cls, text: str) -> CanonicalCategory:
        """Resolve an SB id or a display name to a category.

        Raises ValueError when the text is neither; ground-truth labels must
        be canonical, so no fuzzy matching happens here.
        """
        cleaned = normalize_text(text)
        for category in cls:
            if cleaned == category.value.lower():
                return category
            if cleaned == normalize_text(category.display_name):
                return category
        raise ValueError(f"unknown category: {text!r} (expected an SB id or display name)")


_DISPLAY_NAMES = {
    CanonicalCategory.SQL_INJECTION: "SQL Injection",
    CanonicalCategory.CROSS_SITE_SCRIPTING: "Cross-Site Scripting (XSS)",
    CanonicalCategory.COMMAND_INJECTION: "Command Injection",
    CanonicalCategory.PATH_TRAVERSAL: "Path / Directory Traversal",
    CanonicalCategory.LOCAL_FILE_INCLUSION: "Local File Inclusion (LFI)",
    CanonicalCategory.BRUTE_FORCE: "Brute Force",
    CanonicalCategory.CREDENTIAL_STUFFING: "Credential Stuffing",
    CanonicalCategory.RECONNAISSANCE: "Reconnaissance / Scanning",
    CanonicalCategory.DENIAL_OF_SERVICE: "Denial of Service / DDoS",
    CanonicalCategory.DATA_EXFILTRATION: "Data Exfiltration",
    CanonicalCategory.LATERAL_MOVEMENT: "Lateral Movement / Privilege Escalation",
    CanonicalCategory.MALWARE_C2: "Malware / C2 Activity",
    CanonicalCategory.NO_THREAT: "No Threat / Normal Traffic",
}


class SeverityLevel(enum.IntEnum):
    """Four-level severity vocabulary; the ordering is for display and sorting only."""

    CRITICAL = 4
    HIGH = 3
    MEDIUM = 2
    LOW = 1

    @classmethod
    def resolve(cls, text: str) -> SeverityLevel:
        """Resolve an exact level name (case-insensitive). Used for canonical labels."""
        cleaned = text.strip().upper()
        if cleaned in cls.__members__:
            return cls[cleaned]
        raise ValueError(f"unknown severity: {text!r} (expected one of {', '.join(cls.__members__)})")


class Unmapped(enum.Enum):
    """Sentinel for an extracted value no normalization rule matched.

    Unmapped is a value, not an error: it scores as incorrect and is tallied
    separately from fields the parser never found.
    """

    UNMAPPED = "unmapped"


UNMAPPED = Unmapped.UNMAPPED


def normalize_text(text: str) -> str:
    """Lowercase and collapse all whitespace runs to single spaces."""
    return " ".join(text.lower().split())


@dataclass(frozen=True)
class KeywordTable:
    """Versioned mapping from category to its ordered, lowercase keyword phrases.

    Matching is case-insensitive substring containment on the normalized raw
    value. The version string travels into every report so downstream readers
    can tell which normalization rules produced a score.
    """

    version: str
    entries: dict[CanonicalCategory, tuple[str, ...]]

    def __post_init__(self) -> None:
        seen: dict[str, CanonicalCategory] = {}
        for category in CanonicalCategory:
            keywords = self.entries.get(category, ())
            if not keywords:
                raise ValueError(f"keyword table {self.version!r}: {category.value} has no keywords")
            for keyword in keywords:
                if keyword != normalize_text(keyword):
                    raise ValueError(
                        f"keyword table {self.version!r}: keyword {keyword!r} is not "
                        "lowercase/whitespace-collapsed"
                    )
                owner = seen.setdefault(keyword, category)
                if owner is not category:
                    raise ValueError(
                        f"keyword table {self.version!r}: {keyword!r} appears in both "
                        f"{owner.value} and {category.value}"
                    )

    def iter_keywords(self):
        """Yield (category, keyword) pairs in table order."""
        for category in CanonicalCategory:
            for keyword in self.entries[category]:
                yield category, keyword

    @classmethod
    def from_dict(cls, data: dict) -> KeywordTable:
        version = data.get("version")
        if not isinstance(version, str) or not version:
            raise ValueError("keyword table: missing or empty 'version'")
        categories = data.get("categories")
        if not isinstance(categories, list):
            raise ValueError("keyword table: 'categories' must be a list")
        entries: dict[CanonicalCategory, tuple[str, ...]] = {}
        for item in categories:
            category = CanonicalCategory.resolve(str(item.get("id", "")))
            keywords = item.get("keywords")
            if not isinstance(keywords, list) or not all(isinstance(k, str) for k in keywords):
                raise ValueError(f"keyword table: {category.value} keywords must be a list of strings")
            entries[category] = tuple(normalize_text(k) for k in keywords)
        return cls(version=version, entries=entries)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "categories": [
                {
                    "id": category.value,
                    "name": category.display_name,
                    "keywords": list(self.entries[category]),
                }
                for category in CanonicalCategory
            ],
        }

    @classmethod
    def load(cls, path: Path | str) -> KeywordTable:
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))

    @classmethod
    def default(cls) -> KeywordTable:
        return _default_table()


@lru_cache(maxsize=1)
def _default_table() -> KeywordTable:
    data = resources.files("socbench.data").joinpath("keyword_table.json").read_text("utf-8")
    return KeywordTable.from_dict(json.loads(data))


def normalize_threat(raw: str, table: KeywordTable | None = None) -> CanonicalCategory | Unmapped:
    """Map a raw threat-type string onto a canonical category.

    The longest matching keyword phrase wins, then table order, so specific
    phrases (e.g. "ssh brute force") beat the coarse keywords they contain.
    Returns UNMAPPED when nothing matches; the caller scores that as
    incorrect rather than dropping the record.
    """
    if table is None:
        table = KeywordTable.default()
    text = normalize_text(raw)
    best: CanonicalCategory | None = None
    best_rank: tuple[int, int] | None = None
    for order, (category, keyword) in enumerate(table.iter_keywords()):
        if keyword in text:
            rank = (len(keyword), -order)
            if best_rank is None or rank > best_rank:
                best, best_rank = category, rank
    return best if best is not None else UNMAPPED


_SEVERITY_PATTERN = re.compile(
    r"\b(" + "|".join(level.name.lower() for level in SeverityLevel) + r")\b",
    re.IGNORECASE,
)


def normalize_severity(raw: str) -> SeverityLevel | Unmapped:
    """Map a raw severity string onto the four-level vocabulary.

    The first level word found in the text wins; trailing punctuation and
    qualifiers ("High.", "High risk") are ignored by matching on word
    boundaries. Returns UNMAPPED when no level word appears.
    """
    match = _SEVERITY_PATTERN.search(raw)
    if match is None:
        return UNMAPPED
    return SeverityLevel[match.group(1).upper()]
