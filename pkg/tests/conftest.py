from __future__ import annotations

import pytest

from socbench import KeywordTable, build_reference_fixture


@pytest.fixture(scope="session")
def reference_fixture():
    """(ground truth records, raw outputs by id) for the bundled 50-record dataset."""
    return build_reference_fixture()


@pytest.fixture(scope="session")
def table():
    return KeywordTable.default()
