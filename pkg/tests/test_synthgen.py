"""Rendering oracle and reference fixture construction."""

from __future__ import annotations

import json

from socbench import (
    CanonicalCategory,
    FormatStyle,
    GroundTruthRecord,
    KeyCase,
    LOOP_MARKER,
    Parser,
    Separator,
    SeverityLevel,
    build_reference_fixture,
    fuzzy_extract,
    normalize_severity,
    normalize_threat,
    render_output,
    score_record,
    strict_extract,
    write_fixture,
)

UNDERSCORE_CASES = {KeyCase.UPPER_SNAKE, KeyCase.LOWER_SNAKE, KeyCase.TITLE_UNDERSCORE}


def _truth(category=CanonicalCategory.DENIAL_OF_SERVICE, severity=SeverityLevel.HIGH, mitre="T1498"):
    return GroundTruthRecord(id="t", category=category, severity=severity, mitre_technique=mitre)


# ---------------------------------------------------------------------------
# render_output
# ---------------------------------------------------------------------------


def test_render_title_space_colon_matches_observed_model_format():
    text = render_output(_truth(), FormatStyle(KeyCase.TITLE_SPACE, Separator.COLON), seed=0)
    assert text.startswith("Threat Type: Denial of Service / DDoS\nSeverity: High")
    assert "MITRE Technique ID: T1498" in text


def test_render_upper_snake_colon_matches_training_template():
    truth = _truth(category=CanonicalCategory.SQL_INJECTION, severity=SeverityLevel.CRITICAL)
    text = render_output(truth, FormatStyle(KeyCase.UPPER_SNAKE, Separator.COLON), seed=0)
    assert text.startswith("THREAT_TYPE: SQL INJECTION")
    assert "SEVERITY: CRITICAL" in text


def test_render_is_deterministic_per_triple():
    style = FormatStyle(KeyCase.TITLE_HYPHEN, Separator.EQUALS, include_loop=True)
    first = render_output(_truth(), style, seed=42)
    second = render_output(_truth(), style, seed=42)
    assert first == second


def test_render_omits_requested_fields():
    style = FormatStyle(KeyCase.TITLE_SPACE, Separator.COLON, omit_fields=frozenset({"threat"}))
    text = render_output(_truth(), style, seed=0)
    assert "Threat" not in text
    assert "Severity: High" in text


def test_render_loop_block_sits_after_the_fields():
    style = FormatStyle(KeyCase.TITLE_SPACE, Separator.COLON, include_loop=True)
    text = render_output(_truth(), style, seed=3)
    head, _, tail = text.partition(LOOP_MARKER)
    assert "Threat Type:" in head
    assert tail  # repeated filler follows the marker


def test_loop_filler_contains_no_field_keys():
    style = FormatStyle(KeyCase.TITLE_SPACE, Separator.COLON, include_loop=True)
    text = render_output(_truth(), style, seed=5)
    echo = text.split(LOOP_MARKER, 1)[1].lower()
    for fragment in ("threat", "severity", "mitre"):
        assert fragment not in echo


# ---------------------------------------------------------------------------
# Round-trip properties over the style grid
# ---------------------------------------------------------------------------


def _full_grid():
    for key_case in KeyCase:
        for separator in Separator:
            for category in CanonicalCategory:
                for severity in SeverityLevel:
                    yield key_case, separator, category, severity


def test_fuzzy_round_trip_recovers_every_grid_cell(table):
    for key_case, separator, category, severity in _full_grid():
        truth = GroundTruthRecord(
            id="g", category=category, severity=severity, mitre_technique="T1110"
        )
        text = render_output(truth, FormatStyle(key_case, separator), seed=1)
        fields = fuzzy_extract(text)
        assert fields.threat_raw is not None, (key_case, separator, category)
        assert fields.severity_raw is not None
        assert fields.mitre_raw is not None
        assert normalize_threat(fields.threat_raw, table) is category
        assert normalize_severity(fields.severity_raw) is severity


def test_loops_never_change_fuzzy_extraction():
    for key_case in KeyCase:
        for separator in Separator:
            truth = _truth(category=CanonicalCategory.MALWARE_C2, severity=SeverityLevel.MEDIUM)
            plain = fuzzy_extract(render_output(truth, FormatStyle(key_case, separator), seed=9))
            looped = fuzzy_extract(
                render_output(truth, FormatStyle(key_case, separator, include_loop=True), seed=9)
            )
            assert (plain.threat_raw, plain.severity_raw, plain.mitre_raw) == (
                looped.threat_raw,
                looped.severity_raw,
                looped.mitre_raw,
            )


def test_strict_recovers_threat_only_for_underscore_key_cases():
    for key_case in KeyCase:
        for separator in Separator:
            text = render_output(_truth(), FormatStyle(key_case, separator), seed=2)
            recovered = strict_extract(text).threat_raw is not None
            assert recovered == (key_case in UNDERSCORE_CASES), (key_case, separator)


def test_strict_severity_recovery_is_style_independent():
    for key_case in KeyCase:
        text = render_output(_truth(), FormatStyle(key_case, Separator.COLON), seed=2)
        assert strict_extract(text).severity_raw is not None


# ---------------------------------------------------------------------------
# Reference fixture
# ---------------------------------------------------------------------------


def test_fixture_has_fifty_records_with_skewed_class_counts():
    truths, raws = build_reference_fixture()
    assert len(truths) == 50
    assert set(raws) == {t.id for t in truths}
    counts = {}
    for truth in truths:
        counts[truth.category] = counts.get(truth.category, 0) + 1
    assert counts[CanonicalCategory.SQL_INJECTION] == 8
    assert counts[CanonicalCategory.DATA_EXFILTRATION] == 7
    assert counts[CanonicalCategory.MALWARE_C2] == 5
    assert counts[CanonicalCategory.LOCAL_FILE_INCLUSION] == 3
    assert sorted(counts.values(), reverse=True) == [8, 7, 5, 4, 4, 4, 4, 4, 4, 3, 1, 1, 1]
    assert len(counts) == 13


def test_fixture_outputs_use_spaced_title_keys(reference_fixture):
    _, raws = reference_fixture
    assert all("Threat Type: " in raw for raw in raws.values())
    assert all("THREAT_TYPE" not in raw for raw in raws.values())


def test_fixture_severity_matches_exactly_29_of_50(reference_fixture, table):
    truths, raws = reference_fixture
    for parser in Parser:
        records = [score_record(t, raws[t.id], parser, table) for t in truths]
        assert sum(r.severity_correct for r in records) == 29


def test_fixture_fuzzy_threat_correct_is_38(reference_fixture, table):
    truths, raws = reference_fixture
    records = [score_record(t, raws[t.id], Parser.FUZZY, table) for t in truths]
    assert sum(r.threat_correct for r in records) == 38


def test_fixture_loops_appear_only_in_the_confused_classes(reference_fixture):
    truths, raws = reference_fixture
    confused = {
        CanonicalCategory.BRUTE_FORCE,
        CanonicalCategory.CREDENTIAL_STUFFING,
        CanonicalCategory.RECONNAISSANCE,
    }
    for truth in truths:
        assert (LOOP_MARKER in raws[truth.id]) == (truth.category in confused)


def test_fixture_build_is_deterministic():
    first_truths, first_raws = build_reference_fixture()
    second_truths, second_raws = build_reference_fixture()
    assert first_truths == second_truths
    assert first_raws == second_raws


def test_write_fixture_emits_byte_identical_loadable_files(tmp_path):
    gt_a, pred_a = write_fixture(tmp_path / "one")
    gt_b, pred_b = write_fixture(tmp_path / "two")
    assert gt_a.read_bytes() == gt_b.read_bytes()
    assert pred_a.read_bytes() == pred_b.read_bytes()

    ground_truth = json.loads(gt_a.read_text())
    predictions = json.loads(pred_a.read_text())
    assert len(ground_truth) == len(predictions) == 50
    assert all(set(item) == {"id", "category", "severity", "mitre_technique"} for item in ground_truth)
    assert all(set(item) == {"id", "raw_output"} for item in predictions)
