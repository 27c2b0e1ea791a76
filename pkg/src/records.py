import json
import logging
from typing import Any, Iterable, TextIO

logger = logging.getLogger(__name__)

Record = dict[str, Any]


def record_to_line(record: Record) -> str:
    """Serializes one record as a single JSON line (no trailing newline)."""
    return json.dumps(record, separators=(", ", ": "))


def parse_record_line(line: str) -> Record:
    """
    Parses one line of line-delimited record output.

    Raises:
        ValueError: If the line is not a JSON object.
    """
    loaded = json.loads(line)
    if not isinstance(loaded, dict):
        raise ValueError(f"Expected a JSON object per line, got {type(loaded).__name__}.")
    return loaded


def write_records(records: Iterable[Record], stream: TextIO) -> int:
    """Writes records to an open text stream, one per line. Returns the count written."""
    count = 0
    for record in records:
        stream.write(record_to_line(record) + "\n")
        count += 1
    return count


def save_records(records: Iterable[Record], path: str) -> int:
    """
    Saves records to a local line-delimited JSON file, replacing its contents.

    Args:
        records (Iterable[Record]): Records to save.
        path (str): Destination file.

    Returns:
        int: Number of records written.

    Raises:
        OSError: If the file cannot be written.
    """
    try:
        with open(path, 'w', encoding='utf-8') as f:
            count = write_records(records, f)
    except OSError as e:
        logger.error(f"Failed to write records to {path}: {e}")
        raise
    logger.info(f"Saved {count} records to {path}")
    return count


def load_records(path: str) -> list[Record]:
    """
    Loads records from a local line-delimited JSON file.

    Missing files yield an empty list. Lines that are not JSON objects are
    logged and skipped.

    Args:
        path (str): Source file.

    Returns:
        list[Record]: The parsed records in file order.
    """
    records: list[Record] = []
    try:
        with open(path, 'r', encoding='utf-8') as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    records.append(parse_record_line(line))
                except ValueError as e:  # JSONDecodeError is a ValueError
                    logger.error(f"Skipping invalid record at {path}:{line_number}: {e}")
    except FileNotFoundError:
        logger.info(f"Record file {path} not found. Returning no records.")
    logger.debug(f"Loaded {len(records)} records from {path}")
    return records
