"""
K-order neighbourhood crawl around one account
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

from src.ingest.client import TransactionProvider
from src.ingest.etherscan import load_page, row_to_transaction
from src.ingest.records import CrawlCaps, RawTransaction, TxFilter, dedupe_transactions
from src.utils.log_decorators import log_execution_time
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)


@dataclass
class CrawlResult:
    transactions: List[RawTransaction] = field(default_factory=list)
    accounts_visited: List[str] = field(default_factory=list)
    cap_violations: List[str] = field(default_factory=list)


class _Crawl:
    """Shared fetch cache and cap bookkeeping for one crawl."""

    def __init__(self, client: TransactionProvider, caps: CrawlCaps, tx_filter: TxFilter, workers: int):
        self.client = client
        self.caps = caps
        self.tx_filter = tx_filter
        self.workers = max(1, workers)
        self.cache: Dict[str, List[RawTransaction]] = {}
        self.violations: List[str] = []

    def fetch_account(self, address: str) -> List[RawTransaction]:
        """Page through one account until a short page or the per-account cap."""
        kept: List[RawTransaction] = []
        fetched = 0
        page = 1
        while True:
            rows = load_page(self.client.fetch_page(address, page, self.caps.page_size))
            fetched += len(rows)
            kept.extend(tx for tx in map(row_to_transaction, rows) if self.tx_filter.accepts(tx))
            if len(rows) < self.caps.page_size:
                break
            if fetched >= self.caps.max_tx_per_account:
                self.violations.append(
                    f"{address}: stopped at {fetched} transactions (max_tx_per_account={self.caps.max_tx_per_account})"
                )
                break
            page += 1
        return kept

    def fetch_level(self, frontier: List[str]) -> None:
        """Fetch uncached accounts of a frontier, honouring max_accounts."""
        todo = [a for a in frontier if a not in self.cache]
        room = self.caps.max_accounts - len(self.cache)
        if len(todo) > room:
            self.violations.append(
                f"max_accounts={self.caps.max_accounts} reached; {len(todo) - max(room, 0)} accounts not fetched"
            )
            todo = todo[:max(room, 0)]
        if not todo:
            return
        if self.workers == 1:
            results = list(map(self.fetch_account, todo))
        else:
            with ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix="crawl") as pool:
                results = list(pool.map(self.fetch_account, todo))
        for address, txs in zip(todo, results):
            self.cache[address] = txs

    def expand(self, center: str, depth: Optional[int], outgoing: bool) -> None:
        """Breadth-first over recipients (outgoing) or senders, depth levels deep."""
        seen: Set[str] = {center}
        frontier = [center]
        level = 0
        while frontier:
            self.fetch_level(frontier)
            if depth is not None and level >= depth:
                break
            neighbours: Set[str] = set()
            for account in frontier:
                for tx in self.cache.get(account, []):
                    if outgoing and tx.from_addr == account and tx.to_addr:
                        neighbours.add(tx.to_addr)
                    elif not outgoing and tx.to_addr == account:
                        neighbours.add(tx.from_addr)
            frontier = sorted(neighbours - seen)
            seen.update(frontier)
            level += 1


@log_execution_time(slow_threshold_ms=600_000)
def crawl_k_order(
    client: TransactionProvider,
    center: str,
    k_in: Optional[int],
    k_out: Optional[int],
    caps: CrawlCaps = CrawlCaps(),
    tx_filter: TxFilter = TxFilter(),
    workers: int = 1,
) -> CrawlResult:
    """
    Collect the transactions of every account within k_out hops forward
    and k_in hops backward of `center`

    Levels are expanded in sorted address order and each account is
    fetched at most once, so replaying recorded pages gives the same
    result. Cap hits are recorded on the result rather than raised.

    Args:
        k_in, k_out: Depths; None means unbounded (caps still apply)
        workers: Concurrent account fetches per level
    """
    center = center.strip().lower()
    crawl = _Crawl(client, caps, tx_filter, workers)
    crawl.expand(center, k_out, outgoing=True)
    crawl.expand(center, k_in, outgoing=False)

    all_txs = [tx for txs in crawl.cache.values() for tx in txs]
    result = CrawlResult(
        transactions=dedupe_transactions(all_txs),
        accounts_visited=sorted(crawl.cache),
        cap_violations=list(crawl.violations),
    )
    logger.info(
        f"Crawled {len(result.accounts_visited)} accounts around {center} "
        f"(k_in={k_in}, k_out={k_out}): {len(result.transactions)} transactions"
    )
    for violation in result.cap_violations:
        logger.warning(f"Crawl cap: {violation}")
    return result
