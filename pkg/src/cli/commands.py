"""
Subcommand implementations
Each takes the validated RunConfig plus the loader and returns an exit status
"""

import csv
import glob
import io
import json
import os
import sys
from typing import Callable, Dict, List, Optional

from src.cli.config import RunConfig
from src.embedding.io import write_embeddings
from src.embedding.sgns import train_embeddings
from src.graph.degree import degree_histogram, graph_summary
from src.graph.subgraph import collapse_to_static, k_order_subgraph
from src.graph.twmdg import Twmdg, build_graph
from src.ingest.client import EtherscanClient, FixtureClient
from src.ingest.crawler import crawl_k_order
from src.ingest.csv_io import read_records, write_records
from src.ingest.etherscan import parse_etherscan_page
from src.ingest.records import RawTransaction, records_with_hashes
from src.linkpred.pipeline import run_pipeline
from src.synth.generator import generate, write_synth
from src.utils.config_loader import ConfigLoader, write_key_value_file
from src.utils.errors import ArtifactIOError, ConfigError
from src.utils.logging_factory import get_logger
from src.walks.corpus import (
    generate_corpus,
    generate_static_corpus,
    read_corpus,
    resolve_workers,
    write_corpus,
)

logger = get_logger(__name__)


def write_run_config(artifact: str, cfg: RunConfig) -> str:
    """Resolved settings next to an artifact, reusable via --config."""
    path = f"{artifact}.config"
    write_key_value_file(path, cfg.settings())
    logger.debug(f"Run config written to {path}")
    return path


def load_graph(cfg: RunConfig) -> Twmdg:
    parsed = read_records(cfg.input, cfg.tx_filter())
    graph = build_graph(parsed.records)
    logger.info(f"Loaded {graph!r} from {cfg.input} ({len(parsed.rejects)} rows filtered)")
    return graph


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise ArtifactIOError(f"cannot write {path}: {e}") from e


# -- ingest / crawl -------------------------------------------------------------

def _etherscan_inputs(path: str) -> List[str]:
    if os.path.isdir(path):
        return sorted(glob.glob(os.path.join(path, "*.json")))
    return [path]


def cmd_ingest(cfg: RunConfig, loader: ConfigLoader) -> int:
    """Normalise a CSV or a set of Etherscan pages into canonical CSV."""
    if cfg.format == "csv":
        parsed = read_records(cfg.input, cfg.tx_filter())
        write_records(cfg.output, parsed.records)
        logger.info(f"Ingested {len(parsed.records)} records, {len(parsed.rejects)} rejected")
    else:
        txs: List[RawTransaction] = []
        for page_path in _etherscan_inputs(cfg.input):
            try:
                with open(page_path, "r", encoding="utf-8") as f:
                    txs.extend(parse_etherscan_page(f.read(), cfg.tx_filter()))
            except OSError as e:
                raise ArtifactIOError(f"cannot read {page_path}: {e}") from e
        records, hashes = records_with_hashes(txs)
        write_records(cfg.output, records, hashes)
        logger.info(f"Ingested {len(records)} unique transactions from Etherscan pages")
    write_run_config(cfg.output, cfg)
    return 0


def cmd_crawl(cfg: RunConfig, loader: ConfigLoader) -> int:
    """K-order crawl around --center, from fixtures or the live API."""
    if cfg.fixture_dir:
        client = FixtureClient(cfg.fixture_dir)
    else:
        client = EtherscanClient(
            api_key=cfg.api_key,
            api_url=cfg.api_url,
            network_config=loader.get("network", {}),
            rate_limit=cfg.rate_limit,
        )
    result = crawl_k_order(
        client,
        cfg.center,
        cfg.k_in,
        cfg.k_out,
        caps=cfg.crawl_caps(),
        tx_filter=cfg.tx_filter(),
        workers=resolve_workers(cfg.workers),
    )
    records, hashes = records_with_hashes(result.transactions)
    write_records(cfg.output, records, hashes)
    write_run_config(cfg.output, cfg)
    return 0


# -- graph statistics -----------------------------------------------------------

def cmd_stats(cfg: RunConfig, loader: ConfigLoader) -> int:
    """Degree histogram with power-law fit, optionally on a K-order subgraph."""
    graph = load_graph(cfg)
    if cfg.subgraph_center is not None:
        if not graph.has_label(cfg.subgraph_center):
            raise ConfigError(f"subgraph center {cfg.subgraph_center} is not in the graph")
        graph = k_order_subgraph(graph, graph.node_id(cfg.subgraph_center), cfg.k_in, cfg.k_out).graph

    histogram = degree_histogram(graph, cfg.xmin)
    summary = graph_summary(graph).to_dict()
    summary.update({
        "xmin": histogram.xmin,
        "fit_available": histogram.fit_available,
        "fitted_exponent": histogram.fitted_exponent,
        "n_tail": histogram.n_tail,
    })

    if cfg.gnuplot:
        lines = ["# degree count"] + [f"{deg} {count}" for deg, count in histogram.pairs]
        if histogram.fit_available:
            lines.append(f"# gamma={histogram.fitted_exponent!r} xmin={histogram.xmin} n_tail={histogram.n_tail}")
    else:
        lines = ["degree,count"] + [f"{deg},{count}" for deg, count in histogram.pairs]
    _write_text(cfg.output, "\n".join(lines) + "\n")

    if cfg.output is None:
        logger.info(f"Graph summary: {json.dumps(summary)}")
    else:
        _write_text(f"{cfg.output}.summary.json", json.dumps(summary, indent=2) + "\n")
        write_run_config(cfg.output, cfg)
    return 0


# -- walks and embeddings -------------------------------------------------------

def cmd_walk(cfg: RunConfig, loader: ConfigLoader) -> int:
    graph = load_graph(cfg)
    if cfg.static_mode is not None:
        corpus = generate_static_corpus(
            collapse_to_static(graph), cfg.l, cfg.r, cfg.static_mode, cfg.seed,
            p=cfg.p, q=cfg.q, min_emit_length=cfg.min_emit_length, workers=cfg.workers,
        )
    else:
        corpus = generate_corpus(graph, cfg.walk_config(), workers=cfg.workers, verify=cfg.verify)
    write_corpus(cfg.output, corpus)
    write_run_config(cfg.output, cfg)
    return 0


def cmd_embed(cfg: RunConfig, loader: ConfigLoader) -> int:
    corpus = read_corpus(cfg.input)
    emb = train_embeddings(corpus, cfg.sgns_params())
    write_embeddings(cfg.output, emb)
    write_run_config(cfg.output, cfg)
    return 0


# -- evaluation -----------------------------------------------------------------

def _evaluate(cfg: RunConfig, graph: Twmdg, method):
    return run_pipeline(
        graph,
        method,
        walk_cfg=cfg.walk_config(),
        sgns=cfg.sgns_params(),
        split=cfg.split_spec(),
        seed=cfg.seed,
        p=cfg.p,
        q=cfg.q,
        classifier=cfg.classifier_params(),
        shuffle_labels=cfg.shuffle_labels,
        workers=cfg.workers,
    )


def cmd_eval(cfg: RunConfig, loader: ConfigLoader) -> int:
    """Run the link-prediction pipeline and emit the JSON report."""
    report = _evaluate(cfg, load_graph(cfg), cfg.method)
    _write_text(cfg.output, report.to_json() + "\n")
    if cfg.output is not None:
        write_run_config(cfg.output, cfg)
    return 0


def cmd_sweep(cfg: RunConfig, loader: ConfigLoader) -> int:
    """AUC table: one row per value of the varied setting, one column per method."""
    graph = load_graph(cfg)
    rows = []
    for value in cfg.values:
        point = cfg.model_copy(update={cfg.vary: value})
        aucs = [_evaluate(point, graph, method).auc for method in cfg.methods]
        logger.info(f"sweep {cfg.vary}={value}: " + ", ".join(
            f"{m.value}={auc:.4f}" for m, auc in zip(cfg.methods, aucs)))
        rows.append([value] + [repr(auc) for auc in aucs])

    table = io.StringIO()
    writer = csv.writer(table, lineterminator="\n")
    writer.writerow([cfg.vary] + [m.value for m in cfg.methods])
    writer.writerows(rows)
    _write_text(cfg.output, table.getvalue())
    if cfg.output is not None:
        write_run_config(cfg.output, cfg)
    return 0


# -- synthetic data -------------------------------------------------------------

def cmd_synth(cfg: RunConfig, loader: ConfigLoader) -> int:
    graph, planted = generate(cfg.synth_config())
    write_synth(cfg.output, graph, planted)
    write_run_config(cfg.output, cfg)
    return 0


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig, ConfigLoader], int]] = {
    "ingest": cmd_ingest,
    "crawl": cmd_crawl,
    "stats": cmd_stats,
    "walk": cmd_walk,
    "embed": cmd_embed,
    "eval": cmd_eval,
    "synth": cmd_synth,
    "sweep": cmd_sweep,
}
