import numpy as np
import pytest

from swlab.tables import fmt_value, read_csv, write_csv


def test_fmt_value_types():
    assert fmt_value(True) == "true"
    assert fmt_value(False) == "false"
    assert fmt_value(np.bool_(True)) == "true"
    assert fmt_value(42) == "42"
    assert fmt_value(np.int64(-3)) == "-3"
    assert fmt_value("plain") == "plain"


def test_float_format_roundtrips_exactly():
    values = [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5, float(np.nextafter(1.0, 2.0))]
    for v in values:
        assert float(fmt_value(v)) == v


def test_write_read_roundtrip(tmp_path):
    path = tmp_path / "sub" / "table.csv"
    write_csv(path, ["a", "b", "c"], [[1, 0.25, True], [2, -0.5, False]])
    header, rows = read_csv(path)
    assert header == ["a", "b", "c"]
    assert rows == [["1", "0.25", "true"], ["2", "-0.5", "false"]]
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")


def test_read_csv_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ValueError):
        read_csv(path)
