"""
Etherscan-compatible account transaction pages
"""

import json
from typing import Any, Dict, List

from src.ingest.records import RawTransaction, TxFilter
from src.utils.errors import ApiError, ParseError

NO_TRANSACTIONS = "No transactions found"
EMPTY_PAGE = json.dumps({"status": "0", "message": NO_TRANSACTIONS, "result": []})


def load_page(text: str) -> List[Dict[str, Any]]:
    """
    Unwrap the {"status", "message", "result"} envelope

    Raises:
        ParseError: body is not a JSON envelope
        ApiError: status other than "1", except the empty-result status
    """
    try:
        body = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"page is not JSON: {e}")
    if not isinstance(body, dict) or "status" not in body:
        raise ParseError("page has no status field")

    status = str(body.get("status"))
    message = str(body.get("message", ""))
    if status == "0" and message.startswith(NO_TRANSACTIONS):
        return []
    if status != "1":
        raise ApiError(f"API status {status}: {message} ({body.get('result')})")
    result = body.get("result")
    if not isinstance(result, list):
        raise ParseError("result is not a list")
    return result


def row_to_transaction(row: Dict[str, Any]) -> RawTransaction:
    """Raises ParseError on a row missing fields or with a non-integer value."""
    try:
        tx_hash = str(row["hash"]).strip()
        from_addr = str(row["from"]).strip().lower()
        to_addr = str(row.get("to") or "").strip().lower()
        value_wei = int(str(row["value"]))
        timestamp = int(str(row["timeStamp"]))
    except (KeyError, ValueError) as e:
        raise ParseError(f"bad transaction row {row.get('hash', '?')}: {e}")
    if not tx_hash or not from_addr:
        raise ParseError("transaction row without hash or sender")
    return RawTransaction(
        tx_hash=tx_hash,
        from_addr=from_addr,
        to_addr=to_addr,
        value_wei=value_wei,
        timestamp=timestamp,
        is_error=str(row.get("isError", "0")) != "0",
        receipt_ok=str(row.get("txreceipt_status", "1")) == "1",
    )


def parse_etherscan_page(text: str, tx_filter: TxFilter = TxFilter()) -> List[RawTransaction]:
    """Transactions of one page that pass tx_filter, in page order."""
    return [
        tx for tx in (row_to_transaction(row) for row in load_page(text))
        if tx_filter.accepts(tx)
    ]
