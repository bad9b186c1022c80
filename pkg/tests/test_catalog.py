import json

import pytest

from resgraph.catalog import (
    CatalogError,
    REQUIRED_ENTRIES,
    load_catalog,
    records_to_json,
    records_to_table,
    verify_catalog,
    verify_entry,
)


def test_load_catalog_has_required_entries():
    entries = load_catalog()
    names = {e.name for e in entries}
    assert set(REQUIRED_ENTRIES) <= names
    assert len(entries) == len(names)


def test_index5_entry_shape():
    entries = {e.name: e for e in load_catalog()}
    g = entries["classification/index5-fiber"].graph
    assert len(g.vertices) == 10
    central = [v for v in g.vertices if v.kind.value == "cen"]
    assert len(central) == 1 and central[0].self_int == -1
    weights = sorted(v.self_int for v in g.vertices if v.kind.value == "exc")
    assert weights == [-3, -3, -3, -2, -2, -2, -2, -2, -2]


def test_conic_entry_shape():
    entries = {e.name: e for e in load_catalog()}
    g = entries["classification/conic-fiber"].graph
    # the central curve sits at a chain end, and there is a -4 branch
    (z,) = [v.id for v in g.vertices if v.kind.value == "cen"]
    assert len(g.neighbors(z)) == 1
    assert any(v.self_int == -4 for v in g.vertices if v.complete)


def test_special_vertex_roles():
    entries = {e.name: e for e in load_catalog()}
    roles = entries["classification/d4-target"].special_vertices
    assert roles["core"] == "c"
    assert roles["side"] == "e"
    d5 = entries["classification/d5-target"].special_vertices
    assert d5["section"] == "x"


def test_empty_catalog_reports_missing_entries(tmp_path):
    (tmp_path / "classification").mkdir()
    with pytest.raises(CatalogError) as err:
        load_catalog(tmp_path)
    message = str(err.value)
    assert "missing required entries" in message
    assert "classification/a2-target" in message


def test_every_entry_verifies_clean():
    records = verify_catalog()
    bad = [r for r in records if not r.passed]
    assert bad == [], "\n".join(
        f"{r.entry} {r.check}: expected {r.expected}, got {r.actual}" for r in bad
    )
    assert len(records) > 150


def test_verify_entry_reports_failures_instead_of_raising():
    entries = {e.name: e for e in load_catalog()}
    entry = entries["duval/crepant-a1"]
    entry.expects.append(("outcome", "SmoothPoint"))
    records = verify_entry(entry)
    assert any(not r.passed for r in records)
    entry.expects.append(("bogus_key", "1"))
    records = verify_entry(entry)
    assert any(r.actual.startswith("error:") for r in records)


def test_filtering():
    records = verify_catalog(pattern="rejected/*")
    assert records and all(r.entry.startswith("rejected/") for r in records)
    assert verify_catalog(pattern="no-such-thing/*") == []


def test_json_report_is_deterministic_and_schema_complete():
    first = records_to_json(verify_catalog())
    second = records_to_json(verify_catalog())
    assert first == second
    payload = json.loads(first)
    assert payload["failed"] == 0
    assert payload["total"] == len(payload["checks"])
    for record in payload["checks"]:
        assert set(record) == {"entry", "check", "expected", "actual", "pass"}


def test_table_rendering():
    table = records_to_table(verify_catalog(pattern="duval/*"))
    assert "pass" in table
    assert "checks passed" in table
