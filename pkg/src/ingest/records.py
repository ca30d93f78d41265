"""
Transaction records and the filters applied at ingestion
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.graph.twmdg import Record

WEI_PER_ETHER = 10**18


@dataclass(frozen=True)
class RawTransaction:
    """One normal transaction as reported by the account-transactions API."""

    tx_hash: str
    from_addr: str
    to_addr: str
    value_wei: int
    timestamp: int
    is_error: bool = False
    receipt_ok: bool = True

    @property
    def ether(self) -> float:
        return wei_to_ether(self.value_wei)


class TxFilter(BaseModel):
    """Which transactions survive ingestion."""

    model_config = ConfigDict(frozen=True)

    require_success: bool = True
    require_nonzero: bool = True
    drop_missing_recipient: bool = True

    def rejection_reason(self, tx: RawTransaction) -> str:
        """Empty string when tx is kept."""
        if self.require_success and (tx.is_error or not tx.receipt_ok):
            return "failed transaction"
        if self.require_nonzero and tx.value_wei <= 0:
            return "zero value"
        if self.drop_missing_recipient and not tx.to_addr:
            return "missing recipient"
        return ""

    def accepts(self, tx: RawTransaction) -> bool:
        return not self.rejection_reason(tx)


class CrawlCaps(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_accounts: int = Field(1000, ge=1)
    max_tx_per_account: int = Field(10_000, ge=1)
    page_size: int = Field(10_000, ge=1)


def wei_to_ether(value_wei: int) -> float:
    """
    Exact integer Wei to the nearest double in Ether

    int / int true division rounds half-even, so every value up to 2**53
    Wei converts without error.
    """
    return int(value_wei) / WEI_PER_ETHER


def dedupe_transactions(txs: Iterable[RawTransaction]) -> List[RawTransaction]:
    """One transaction per hash (first kept), ordered by (timestamp, hash)."""
    unique: Dict[str, RawTransaction] = {}
    for tx in txs:
        unique.setdefault(tx.tx_hash, tx)
    return sorted(unique.values(), key=lambda tx: (tx.timestamp, tx.tx_hash))


def raw_to_records(txs: Iterable[RawTransaction]) -> List[Record]:
    """(from, to, ether, timestamp) four-tuples, deduplicated and time ordered."""
    return [
        (tx.from_addr, tx.to_addr, tx.ether, tx.timestamp)
        for tx in dedupe_transactions(txs)
    ]


def records_with_hashes(txs: Iterable[RawTransaction]) -> Tuple[List[Record], List[str]]:
    ordered = dedupe_transactions(txs)
    return (
        [(tx.from_addr, tx.to_addr, tx.ether, tx.timestamp) for tx in ordered],
        [tx.tx_hash for tx in ordered],
    )
