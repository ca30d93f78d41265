"""
Command-Line Entry Point
Parses flags, layers configuration, runs one subcommand, maps errors to exit codes
"""

import argparse
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from src.cli.commands import COMMAND_HANDLERS
from src.cli.config import UNBOUNDED, RunConfig
from src.linkpred.pipeline import EvalMethod
from src.utils.config_loader import ConfigLoader
from src.utils.errors import ArtifactIOError, TwmdgError, UsageError
from src.utils.logging_factory import LoggingFactory, get_logger
from src.utils.structured_logging import clear_run_id, set_run_id
from src.walks.sampler import StaticWalkMode
from src.walks.strategies import TemporalStrategy, WeightStrategy

logger = get_logger(__name__)

COMMAND_HELP = {
    "ingest": "normalise CSV or Etherscan JSON pages into canonical CSV",
    "crawl": "crawl a K-order neighbourhood through the transaction API",
    "stats": "degree histogram and power-law fit",
    "walk": "generate a temporal (or static baseline) walk corpus",
    "embed": "train SkipGram embeddings on a walk corpus",
    "eval": "temporal link-prediction evaluation",
    "synth": "generate a synthetic graph with planted chains",
    "sweep": "AUC table over one varied hyperparameter",
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad usage."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _depth(text: str) -> Any:
    if text.strip().lower() in UNBOUNDED:
        return "inf"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer or 'inf', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("depth must be non-negative")
    return value


def _choices(enum_cls) -> List[str]:
    return [member.value for member in enum_cls]


def _common_flags() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; all default to None so lower layers show through."""
    common = _Parser(add_help=False, argument_default=None)
    toggle = dict(action=argparse.BooleanOptionalAction)

    run = common.add_argument_group("run")
    run.add_argument("--config", help="flat key=value settings file (flags win)")
    run.add_argument("--input", "-i", help="input file (graph CSV, corpus, or Etherscan pages)")
    run.add_argument("--output", "-o", help="output artifact path")
    run.add_argument("--format", choices=["csv", "etherscan"], help="ingest input format")
    run.add_argument("--seed", type=int, help="master random seed")
    run.add_argument("--workers", type=int, help="walk/crawl worker threads (0 = all cores)")

    walk = common.add_argument_group("walks")
    walk.add_argument("--l", type=int, help="walk length")
    walk.add_argument("--r", type=int, help="walks per node")
    walk.add_argument("--alpha", type=float, help="time/amount blend in [0, 1]")
    walk.add_argument("--temporal", choices=_choices(TemporalStrategy))
    walk.add_argument("--weighted", choices=_choices(WeightStrategy))
    walk.add_argument("--min-emit-length", type=int, dest="min_emit_length")
    walk.add_argument("--static-mode", choices=_choices(StaticWalkMode), dest="static_mode",
                      help="walk the collapsed static digraph instead")
    walk.add_argument("--verify", help="re-check every temporal walk", **toggle)
    walk.add_argument("--p", type=float, help="node2vec return parameter")
    walk.add_argument("--q", type=float, help="node2vec in-out parameter")

    sgns = common.add_argument_group("embedding")
    sgns.add_argument("--d", type=int, help="embedding dimension")
    sgns.add_argument("--k", type=int, help="context window")
    sgns.add_argument("--n-neg", type=int, dest="n_neg", help="negatives per pair")
    sgns.add_argument("--epochs", type=int)
    sgns.add_argument("--lr", type=float, help="initial learning rate")
    sgns.add_argument("--min-count", type=int, dest="min_count")
    sgns.add_argument("--batch-pairs", type=int, dest="batch_pairs", help="training pairs per update")

    ev = common.add_argument_group("evaluation")
    ev.add_argument("--method", choices=_choices(EvalMethod))
    ev.add_argument("--train-fraction", type=float, dest="train_fraction")
    ev.add_argument("--l2", type=float, help="classifier L2 strength")
    ev.add_argument("--clf-epochs", type=int, dest="clf_epochs")
    ev.add_argument("--clf-lr", type=float, dest="clf_lr")
    ev.add_argument("--shuffle-labels", dest="shuffle_labels",
                    help="permute training labels (null model)", **toggle)

    stats = common.add_argument_group("stats")
    stats.add_argument("--xmin", type=int, help="power-law fit threshold")
    stats.add_argument("--gnuplot", help="whitespace columns instead of CSV", **toggle)
    stats.add_argument("--subgraph-center", dest="subgraph_center")

    synth = common.add_argument_group("synth")
    synth.add_argument("--n-nodes", type=int, dest="n_nodes")
    synth.add_argument("--gamma", type=float)
    synth.add_argument("--horizon", type=int)
    synth.add_argument("--n-background-edges", type=int, dest="n_background_edges")
    synth.add_argument("--n-chains", type=int, dest="n_chains")
    synth.add_argument("--chain-length", type=int, dest="chain_length")
    synth.add_argument("--weight-mu", type=float, dest="weight_mu")
    synth.add_argument("--weight-sigma", type=float, dest="weight_sigma")
    synth.add_argument("--group-size", type=int, dest="group_size", help="accounts per trading group")
    synth.add_argument("--noise-fraction", type=float, dest="noise_fraction",
                       help="share of edge ends wired across groups")
    synth.add_argument("--bursts-per-group", type=int, dest="bursts_per_group")
    synth.add_argument("--burst-width", type=float, dest="burst_width", help="burst length as a share of the horizon")
    synth.add_argument("--noise-amount-scale", type=float, dest="noise_amount_scale")

    crawl = common.add_argument_group("crawl")
    crawl.add_argument("--center")
    crawl.add_argument("--k-in", type=_depth, dest="k_in", help="inward depth or 'inf'")
    crawl.add_argument("--k-out", type=_depth, dest="k_out", help="outward depth or 'inf'")
    crawl.add_argument("--max-accounts", type=int, dest="max_accounts")
    crawl.add_argument("--max-tx-per-account", type=int, dest="max_tx_per_account")
    crawl.add_argument("--page-size", type=int, dest="page_size")
    crawl.add_argument("--rate-limit", type=float, dest="rate_limit", help="requests per second")
    crawl.add_argument("--fixture-dir", dest="fixture_dir", help="serve recorded pages instead of the API")
    crawl.add_argument("--api-url", dest="api_url")
    crawl.add_argument("--require-success", dest="require_success", **toggle)
    crawl.add_argument("--require-nonzero", dest="require_nonzero", **toggle)
    crawl.add_argument("--drop-missing-recipient", dest="drop_missing_recipient", **toggle)

    sweep = common.add_argument_group("sweep")
    sweep.add_argument("--vary", choices=["k", "l", "r", "d"])
    sweep.add_argument("--values", help="comma-separated integers")
    sweep.add_argument("--methods", help="comma-separated methods")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(
        prog="twmdg_embed",
        description="Temporal walk embeddings and link prediction on transaction graphs",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    for name, help_text in COMMAND_HELP.items():
        subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in ("command", "config")}


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand

    Returns:
        0 on success; the error's exit code otherwise (usage/config 1,
        parse 2, io 3, api 4, math 5)
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1

    set_run_id()
    try:
        loader = ConfigLoader(args.config)
        LoggingFactory.configure(loader.get("logging", {}), os.getenv("ENVIRONMENT", "production"))
        settings = loader.resolve(_overrides(args))
        cfg = RunConfig.from_settings(args.command, {**settings, "config": args.config})
        cfg.require()
        logger.info(f"Running {cfg.command} with {cfg.settings()}")
        return COMMAND_HANDLERS[cfg.command](cfg, loader)
    except TwmdgError as e:
        logger.error(f"{e.category} error: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"io error: {e}")
        return ArtifactIOError.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        return 1
    finally:
        clear_run_id()


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
