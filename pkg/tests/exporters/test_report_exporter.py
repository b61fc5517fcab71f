import json
import pathlib

import pytest

from fluor.evaluation import EvalEntry, EvalReport
from fluor.exporters.report_exporter import (
    ReportJSONExporter, ReportTableExporter, build_table)


@pytest.fixture
def report():
    entries = [
        EvalEntry("m", "A", "xyz", "ours", 1.0, (1, 1, 1), (1, 1, 1)),
        EvalEntry("n", "A", "xyz", "ours", 2.0, (1, 1, 1), (1, 1, 1)),
        EvalEntry("m", "A", "xyz", "naive", 9.5, (1, 1, 1), (2, 2, 2)),
        EvalEntry("m", "D65", "xyz", "ours", 0.25, (1, 1, 1), (1, 1, 1)),
    ]
    return EvalReport(entries, ["A", "D65"], metadata={"seed": "0"})


def test_build_table(report):
    table = build_table(report)
    assert [column.header for column in table.columns] == \
        ["Basis", "Method", "A", "D65"]
    assert table.row_count == 2
    assert list(table.columns[2].cells) == ["9.50", "1.50"]
    assert list(table.columns[3].cells) == ["-", "0.25"]


def test_json_export(report, tmpdir):
    path = pathlib.Path(tmpdir, "report.json")
    ReportJSONExporter().export(report, path, {"command": "eval"})

    content = json.loads(path.read_text())
    assert content["metadata"] == {"seed": "0", "command": "eval"}
    assert content["averages"]["xyz/ours"] == {"A": 1.5, "D65": 0.25}
    assert content["ordering_violations"] == []
    assert len(content["entries"]) == 4


def test_table_export(report, tmpdir):
    path = pathlib.Path(tmpdir, "report.txt")
    ReportTableExporter().export(report, path)

    text = path.read_text()
    assert text.startswith("# seed=0\n")
    assert "Average ΔE2000" in text
    assert "XYZ" in text
    assert "1.50" in text
    assert "\x1b[" not in text
