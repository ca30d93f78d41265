"""
Canonical edge-list CSV

Header "from,to,value,timestamp" with an optional trailing "txhash" column;
value is decimal Ether, timestamp integer Unix seconds; UTF-8 with LF.
"""

import csv
import math
from dataclasses import dataclass, field
from typing import IO, List, Optional, Sequence, Tuple

from src.graph.twmdg import Record
from src.ingest.records import RawTransaction, TxFilter
from src.utils.errors import ArtifactIOError, ParseError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)

HEADER = ["from", "to", "value", "timestamp"]
HASH_COLUMN = "txhash"


@dataclass
class CsvParseResult:
    """Accepted records plus (line number, reason) for filtered rows."""

    records: List[Record] = field(default_factory=list)
    rejects: List[Tuple[int, str]] = field(default_factory=list)


def _row_filter_reason(src: str, dst: str, value: float, tx_filter: TxFilter) -> str:
    probe = RawTransaction(
        tx_hash="-", from_addr=src, to_addr=dst, value_wei=1 if value > 0 else 0, timestamp=0
    )
    return tx_filter.rejection_reason(probe)


def parse_csv(stream: IO[str], tx_filter: TxFilter = TxFilter()) -> CsvParseResult:
    """
    Read canonical CSV records

    Rows dropped by the filter (zero value, empty recipient) and repeated
    tx hashes go to `rejects`; structurally bad rows are errors.

    Raises:
        ParseError: missing/invalid header, wrong column count, non-numeric
            value or timestamp, negative value or timestamp
    """
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        raise ParseError("missing header 'from,to,value,timestamp'", line=1)
    header = [h.strip().lower() for h in header]
    if header not in (HEADER, HEADER + [HASH_COLUMN]):
        raise ParseError(f"unexpected header {','.join(header)!r}", line=1)
    has_hash = len(header) == 5

    result = CsvParseResult()
    seen_hashes = set()
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} columns, found {len(row)}", line=line)
        src, dst = row[0].strip(), row[1].strip()
        try:
            value = float(row[2])
        except ValueError:
            raise ParseError(f"value {row[2]!r} is not a number", line=line)
        if not math.isfinite(value):
            raise ParseError(f"value {row[2]!r} is not finite", line=line)
        try:
            timestamp = int(row[3])
        except ValueError:
            raise ParseError(f"timestamp {row[3]!r} is not an integer", line=line)
        if value < 0 or timestamp < 0:
            raise ParseError("value and timestamp must be non-negative", line=line)
        if not src:
            raise ParseError("empty sender address", line=line)

        reason = _row_filter_reason(src, dst, value, tx_filter)
        if not reason and has_hash:
            tx_hash = row[4].strip()
            if tx_hash in seen_hashes:
                reason = "duplicate txhash"
            seen_hashes.add(tx_hash)
        if reason:
            result.rejects.append((line, reason))
            continue
        result.records.append((src, dst, value, timestamp))

    if result.rejects:
        logger.info(f"CSV: kept {len(result.records)} rows, rejected {len(result.rejects)}")
    return result


def write_csv(stream: IO[str], records: Sequence[Record], tx_hashes: Optional[Sequence[str]] = None) -> None:
    """Canonical writer; value uses repr so parse_csv reads back the same double."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER + ([HASH_COLUMN] if tx_hashes is not None else []))
    for i, (src, dst, value, timestamp) in enumerate(records):
        row = [src, dst, repr(float(value)), int(timestamp)]
        if tx_hashes is not None:
            row.append(tx_hashes[i])
        writer.writerow(row)


def read_records(path: str, tx_filter: TxFilter = TxFilter()) -> CsvParseResult:
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            return parse_csv(f, tx_filter)
    except OSError as e:
        raise ArtifactIOError(f"cannot read {path}: {e}") from e


def write_records(path: str, records: Sequence[Record], tx_hashes: Optional[Sequence[str]] = None) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            write_csv(f, records, tx_hashes)
    except OSError as e:
        raise ArtifactIOError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {len(records)} records to {path}")
