"""
Transaction ingestion: CSV, Etherscan pages, K-order crawl
"""

from .client import EtherscanClient, FixtureClient, TransactionProvider
from .crawler import CrawlResult, crawl_k_order
from .csv_io import CsvParseResult, parse_csv, read_records, write_csv, write_records
from .etherscan import load_page, parse_etherscan_page
from .records import (
    CrawlCaps,
    RawTransaction,
    TxFilter,
    dedupe_transactions,
    raw_to_records,
    records_with_hashes,
    wei_to_ether,
)

__all__ = [
    'EtherscanClient',
    'FixtureClient',
    'TransactionProvider',
    'CrawlResult',
    'crawl_k_order',
    'CsvParseResult',
    'parse_csv',
    'read_records',
    'write_csv',
    'write_records',
    'load_page',
    'parse_etherscan_page',
    'CrawlCaps',
    'RawTransaction',
    'TxFilter',
    'dedupe_transactions',
    'raw_to_records',
    'records_with_hashes',
    'wei_to_ether',
]
