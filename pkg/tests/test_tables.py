import json
import shutil

import pytest

from deeptkt.tables import default_data_dir, load_table, rows_checksum, tally_groups, verify_tables


@pytest.fixture(scope="module")
def report():
    return verify_tables()


def test_shipped_tables_verify(report):
    assert report.ok, report.errors
    assert len([r for r in report.rows if r.table == "table2"]) == 3
    assert len([r for r in report.rows if r.table == "table3"]) == 7
    assert len([r for r in report.rows if r.table == "table4"]) == 68


def test_ground_state_identifications(report):
    got = {r.d: r.identified for r in report.rows if r.table == "table2"}
    assert got == {62501: (729, 99), 152949: (729, 100), 252977: (729, 101)}


def test_undetermined_row(report):
    row = next(r for r in report.rows if r.d == 4965009)
    assert row.group == (729, None) and row.identified is None and row.sylow3 == "(3,3)"


def test_tally(report):
    assert report.tally == {99: 27, 100: 20, 101: 20}
    assert sum(report.tally.values()) == 67
    assert abs(report.proportions[99] - 40) <= 2 and abs(report.proportions[100] - 30) <= 2


def _copy(tmp_path):
    dst = tmp_path / "tables"
    shutil.copytree(default_data_dir(), dst)
    return dst


def test_missing_file(tmp_path):
    d = _copy(tmp_path)
    (d / "table3.json").unlink()
    rep = verify_tables(d)
    assert not rep.ok and any("missing" in e for e in rep.errors)


def test_schema_violation(tmp_path):
    d = _copy(tmp_path)
    doc = json.loads((d / "table2.json").read_text())
    doc["rows"][0]["kappa_d"] = [3, 9]
    (d / "table2.json").write_text(json.dumps(doc))
    assert not verify_tables(d).ok


def test_checksum_and_arithmetic_mismatch(tmp_path):
    d = _copy(tmp_path)
    doc = json.loads((d / "table2.json").read_text())
    doc["rows"][0]["d"] = 62500
    (d / "table2.json").write_text(json.dumps(doc))
    assert any("checksum" in e for e in verify_tables(d).errors)
    doc["sha256"] = rows_checksum(doc["rows"])
    (d / "table2.json").write_text(json.dumps(doc))
    errs = verify_tables(d).errors
    assert any("62500" in e and "fundamental" in e for e in errs)


def test_wrong_group_is_reported(tmp_path):
    d = _copy(tmp_path)
    doc = json.loads((d / "table3.json").read_text())
    doc["rows"][0]["group"]["index"] = 2227
    doc["sha256"] = rows_checksum(doc["rows"])
    (d / "table3.json").write_text(json.dumps(doc))
    errs = verify_tables(d).errors
    assert any("identifies (6561, 2225)" in e for e in errs)


def test_tally_helper():
    rows = [{"group": {"index": i}} for i in (99, 99, 100, None)]
    tally, prop = tally_groups(rows)
    assert tally == {99: 2, 100: 1} and round(prop[99], 3) == 66.667


def test_running_proportions():
    # rounded percentages below 1, 2, 3, 4 * 10^6
    rows = load_table(default_data_dir() / "table4.json")["rows"]
    expect = {10**6: (36, 36, 27), 2 * 10**6: (38, 29, 33), 3 * 10**6: (41, 24, 35), 4 * 10**6: (43, 24, 33)}
    for bound, want in expect.items():
        _, prop = tally_groups([r for r in rows if r["d"] < bound])
        assert tuple(round(prop[k]) for k in (99, 100, 101)) == want
