"""
Tests for Etherscan page parsing and ingestion filters
"""
import json

import pytest

from src.ingest.etherscan import EMPTY_PAGE, load_page, parse_etherscan_page, row_to_transaction
from src.ingest.records import RawTransaction, TxFilter, raw_to_records, wei_to_ether
from src.utils.errors import ApiError, ParseError


def _row(**overrides):
    row = {
        "hash": "0xaa",
        "from": "0x1111111111111111111111111111111111111111",
        "to": "0x2222222222222222222222222222222222222222",
        "value": "1000000000000000000",
        "timeStamp": "1500000000",
        "isError": "0",
        "txreceipt_status": "1",
    }
    row.update(overrides)
    return row


def _page(*rows):
    return json.dumps({"status": "1", "message": "OK", "result": list(rows)})


def test_one_ether_row():
    """Test 10^18 Wei becomes weight 1.0 with the row's timestamp"""
    txs = parse_etherscan_page(_page(_row()))
    assert raw_to_records(txs) == [(
        "0x1111111111111111111111111111111111111111",
        "0x2222222222222222222222222222222222222222",
        1.0,
        1500000000,
    )]


def test_no_transactions_is_empty():
    """Test the 'No transactions found' status is an empty page, not an error"""
    assert load_page(EMPTY_PAGE) == []
    assert parse_etherscan_page(EMPTY_PAGE) == []


def test_error_status_raises_api_error():
    """Test a NOTOK envelope"""
    body = json.dumps({"status": "0", "message": "NOTOK", "result": "Invalid API Key"})
    with pytest.raises(ApiError):
        load_page(body)


@pytest.mark.parametrize("text", ["not json", "[1, 2]", json.dumps({"message": "OK"}),
                                  json.dumps({"status": "1", "message": "OK", "result": "x"})])
def test_malformed_page_raises_parse_error(text):
    """Test bodies that are not a usable envelope"""
    with pytest.raises(ParseError):
        load_page(text)


def test_filters_drop_failed_empty_and_zero():
    """Test isError, contract creation and zero-value rows are dropped"""
    page = _page(
        _row(hash="0x1"),
        _row(hash="0x2", isError="1"),
        _row(hash="0x3", txreceipt_status="0"),
        _row(hash="0x4", to=""),
        _row(hash="0x5", value="0"),
    )
    assert [tx.tx_hash for tx in parse_etherscan_page(page)] == ["0x1"]


def test_filters_can_be_relaxed():
    """Test each filter switch keeps its rows when turned off"""
    page = _page(_row(hash="0x1"), _row(hash="0x2", value="0"), _row(hash="0x3", isError="1"))
    relaxed = TxFilter(require_success=False, require_nonzero=False)
    assert [tx.tx_hash for tx in parse_etherscan_page(page, relaxed)] == ["0x1", "0x2", "0x3"]


def test_missing_receipt_status_counts_as_success():
    """Test pre-Byzantium rows without a receipt field are kept"""
    row = _row()
    del row["txreceipt_status"]
    assert row_to_transaction(row).receipt_ok


def test_addresses_lowercased():
    """Test checksummed addresses are normalized"""
    tx = row_to_transaction(_row(**{"from": "0xAbCdEf0000000000000000000000000000000000"}))
    assert tx.from_addr == "0xabcdef0000000000000000000000000000000000"


@pytest.mark.parametrize("bad", [{"value": "1.5"}, {"timeStamp": "soon"}, {"hash": ""}])
def test_bad_row_raises_parse_error(bad):
    """Test rows with unusable fields"""
    with pytest.raises(ParseError):
        row_to_transaction(_row(**bad))


def test_wei_conversion_is_exact():
    """Test integer Wei converts to the nearest double"""
    assert wei_to_ether(10**18) == 1.0
    assert wei_to_ether(1) == 1e-18
    assert wei_to_ether(123456789 * 10**9) == 0.123456789
    assert wei_to_ether(0) == 0.0


def test_raw_to_records_dedupes_and_orders():
    """Test repeated hashes collapse and output is time ordered"""
    late = RawTransaction("0xb", "a", "b", 10**18, 20)
    early = RawTransaction("0xa", "b", "c", 2 * 10**18, 10)
    assert raw_to_records([late, early, late]) == [("b", "c", 2.0, 10), ("a", "b", 1.0, 20)]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
