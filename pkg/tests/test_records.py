import io

import pytest

from src.records import load_records, parse_record_line, record_to_line, save_records, write_records

SAMPLE_RECORDS = [
    {"n": 1, "variant": "pell", "value_decimal": "1", "matched": True},
    {"a": 5, "n": 2, "c": None, "value_decimal": "2.236"},
]


def test_record_to_line_is_single_line():
    line = record_to_line({"value_decimal": "12345678901234567890", "matched": False})
    assert "\n" not in line
    assert parse_record_line(line) == {"value_decimal": "12345678901234567890", "matched": False}


def test_parse_record_line_rejects_non_objects():
    with pytest.raises(ValueError):
        parse_record_line("[1, 2]")
    with pytest.raises(ValueError):
        parse_record_line("not json")


def test_write_records_counts_lines():
    stream = io.StringIO()
    assert write_records(SAMPLE_RECORDS, stream) == 2
    assert stream.getvalue().count("\n") == 2


def test_save_and_load_records(tmp_path):
    path = tmp_path / "records.jsonl"

    assert save_records(SAMPLE_RECORDS, str(path)) == 2

    assert load_records(str(path)) == SAMPLE_RECORDS


def test_load_records_missing_file(tmp_path):
    assert load_records(str(tmp_path / "missing.jsonl")) == []


def test_load_records_skips_invalid_lines(tmp_path, caplog):
    path = tmp_path / "records.jsonl"
    path.write_text('{"n": 1}\n\nnot json\n[3]\n{"n": 2}\n', encoding="utf-8")

    assert load_records(str(path)) == [{"n": 1}, {"n": 2}]
    assert "Skipping invalid record" in caplog.text


def test_save_records_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        save_records(SAMPLE_RECORDS, str(tmp_path / "no_such_dir" / "records.jsonl"))
