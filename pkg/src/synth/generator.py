"""
Synthetic TWMDG Generator
Power-law degree sequence wired into bursty trading groups, cross-group
noise and planted temporal money-flow chains
"""

import math
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.graph.twmdg import Record, TemporalEdge, Twmdg, build_graph
from src.ingest.csv_io import write_records
from src.utils.errors import ConfigError
from src.utils.logging_factory import get_logger
from src.walks.rng import STREAM_SYNTH, stage_rng

logger = get_logger(__name__)

LATE_WINDOW = 0.9  # final chain hops land in [0.9 * horizon, horizon]


class SynthConfig(BaseModel):
    """
    Size, degree exponent, time horizon, planted chains and amount law

    Node i belongs to trading group i // group_size. A
    stub of the degree sequence stays inside the group unless it is drawn
    as noise (probability `noise_fraction`); noise stubs pair across the
    whole graph at uniform times and carry amounts scaled by
    `noise_amount_scale`. Group traffic happens in `bursts_per_group`
    windows, each `burst_width` of the horizon long.
    """

    model_config = ConfigDict(frozen=True)

    n_nodes: int = Field(2000, ge=2)
    gamma: float = Field(2.5, gt=1.0)
    horizon: int = Field(1_000_000, gt=0)
    n_background_edges: int = Field(20_000, ge=0)
    n_chains: int = Field(200, ge=0)
    chain_length: int = Field(4, ge=3)
    weight_mu: float = 0.0
    weight_sigma: float = Field(1.0, ge=0.0)
    group_size: int = Field(8, ge=2)
    noise_fraction: float = Field(0.2, ge=0.0, le=1.0)
    bursts_per_group: int = Field(12, ge=1)
    burst_width: float = Field(0.01, gt=0.0, le=1.0)
    noise_amount_scale: float = Field(0.1, gt=0.0)
    seed: int = Field(42, ge=0, lt=2**64)


def node_label(i: int) -> str:
    return f"0x{i:040x}"


def _truncated_mean(ks: np.ndarray, gamma: float) -> float:
    pmf = np.exp(-gamma * (np.log(ks) - math.log(ks[0])))
    return float((ks * pmf).sum() / pmf.sum())


def power_law_degrees(n: int, gamma: float, n_stubs: int, rng: np.random.Generator) -> np.ndarray:
    """
    Integer degrees from a discrete power law P(k) ~ k^-gamma, summing to n_stubs

    Degrees are capped at sqrt(n_stubs). The minimum degree is the largest
    k_min whose expected mean stays at or below n_stubs / n, so sparse
    graphs keep the law down to degree 1. The sampled total is then
    matched exactly: missing stubs go to nodes in proportion to their
    degree, surplus stubs are removed without emptying a node where
    possible.
    """
    if n_stubs == 0:
        return np.zeros(n, dtype=np.int64)
    k_max = max(1, math.isqrt(n_stubs))
    support = np.arange(1, k_max + 1, dtype=np.float64)
    target = n_stubs / n
    k_min = 1
    while k_min < k_max and _truncated_mean(support[k_min:], gamma) <= target:
        k_min += 1

    ks = support[k_min - 1:]
    pmf = np.exp(-gamma * (np.log(ks) - math.log(ks[0])))
    degrees = rng.choice(ks, size=n, p=pmf / pmf.sum()).astype(np.int64)

    deficit = n_stubs - int(degrees.sum())
    if deficit > 0:
        extra = rng.choice(n, size=deficit, p=degrees / degrees.sum())
        degrees += np.bincount(extra, minlength=n)
    elif deficit < 0:
        spare = np.clip(degrees - 1, 0, None)
        if spare.sum() < -deficit:
            spare = degrees
        owners = np.repeat(np.arange(n), spare)
        drop = rng.choice(len(owners), size=-deficit, replace=False)
        degrees -= np.bincount(owners[drop], minlength=n)
    return degrees


def _pair_stubs(
    owners: np.ndarray, groups: np.ndarray, noise: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Configuration-model wiring: group stubs pair inside their group, the rest globally

    Returns:
        (src, dst, is_noise) per edge; each stub is used exactly once
    """
    inner = np.flatnonzero(~noise)
    order = inner[np.lexsort((rng.random(len(inner)), groups[owners[inner]]))]
    group_seq = groups[owners[order]]
    starts = np.flatnonzero(np.r_[True, group_seq[1:] != group_seq[:-1]])
    sizes = np.diff(np.r_[starts, len(order)])
    position = np.arange(len(order)) - np.repeat(starts, sizes)
    last_odd = position == np.repeat(sizes - 1, sizes)
    last_odd &= np.repeat(sizes % 2 == 1, sizes)

    paired = order[~last_odd]
    inner_src, inner_dst = owners[paired[0::2]], owners[paired[1::2]]

    rest = np.concatenate([np.flatnonzero(noise), order[last_odd]])
    rest = rest[rng.permutation(len(rest))]
    noise_src, noise_dst = owners[rest[0::2]], owners[rest[1::2]]

    src = np.concatenate([inner_src, noise_src])
    dst = np.concatenate([inner_dst, noise_dst])
    is_noise = np.r_[np.zeros(len(inner_src), dtype=bool), np.ones(len(noise_src), dtype=bool)]
    return src, dst, is_noise


def _background(
    cfg: SynthConfig, groups: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Background edges as (src, dst, amount, timestamp) arrays in random order."""
    degrees = power_law_degrees(cfg.n_nodes, cfg.gamma, 2 * cfg.n_background_edges, rng)
    owners = np.repeat(np.arange(cfg.n_nodes), degrees)
    noise = rng.random(len(owners)) < cfg.noise_fraction
    src, dst, is_noise = _pair_stubs(owners, groups, noise, rng)

    n_groups = int(groups.max()) + 1
    width = int(cfg.burst_width * cfg.horizon)
    burst_starts = rng.integers(0, cfg.horizon - width + 1, size=(n_groups, cfg.bursts_per_group))
    burst = rng.integers(0, cfg.bursts_per_group, size=len(src))
    times = burst_starts[groups[src], burst] + rng.integers(0, width + 1, size=len(src))
    times[is_noise] = rng.integers(0, cfg.horizon + 1, size=int(is_noise.sum()))

    amounts = rng.lognormal(cfg.weight_mu, cfg.weight_sigma, size=len(src))
    amounts[is_noise] *= cfg.noise_amount_scale

    order = rng.permutation(len(src))
    return src[order], dst[order], amounts[order], times[order]


def _check_feasible(cfg: SynthConfig) -> None:
    hops = cfg.chain_length - 1
    if cfg.n_chains and cfg.chain_length > cfg.n_nodes:
        raise ConfigError(f"chain_length {cfg.chain_length} exceeds n_nodes {cfg.n_nodes}")
    # earlier hops need distinct integer times strictly below the final hop
    if cfg.n_chains and math.ceil(LATE_WINDOW * cfg.horizon) < hops - 1:
        raise ConfigError(
            f"horizon {cfg.horizon} too short for {hops}-hop chains with increasing timestamps"
        )


def _chain_nodes(
    cfg: SynthConfig, members: List[np.ndarray], rng: np.random.Generator
) -> np.ndarray:
    """Distinct chain nodes from one group, or from the whole graph if no group is large enough."""
    eligible = [m for m in members if len(m) >= cfg.chain_length]
    if not eligible:
        return rng.choice(cfg.n_nodes, size=cfg.chain_length, replace=False)
    pool = eligible[int(rng.integers(len(eligible)))]
    return rng.choice(pool, size=cfg.chain_length, replace=False)


def generate_with_chains(cfg: SynthConfig) -> Tuple[Twmdg, List[TemporalEdge], List[List[int]]]:
    """
    Like generate(), also returning each chain's edge ids in hop order
    """
    _check_feasible(cfg)
    rng = stage_rng(cfg.seed, STREAM_SYNTH)
    labels = [node_label(i) for i in range(cfg.n_nodes)]
    groups = np.arange(cfg.n_nodes) // cfg.group_size
    members = [np.flatnonzero(groups == g) for g in range(int(groups.max()) + 1)]

    src, dst, amounts, times = _background(cfg, groups, rng)
    records: List[Record] = [
        (labels[s], labels[d], float(w), int(t)) for s, d, w, t in zip(src, dst, amounts, times)
    ]

    hops = cfg.chain_length - 1
    late_start = math.ceil(LATE_WINDOW * cfg.horizon)
    chains: List[List[int]] = []
    for _ in range(cfg.n_chains):
        nodes = _chain_nodes(cfg, members, rng)
        last = int(rng.integers(late_start, cfg.horizon + 1))
        earlier = np.sort(rng.choice(last, size=hops - 1, replace=False))
        stamps = [int(t) for t in earlier] + [last]
        chain_amounts = rng.lognormal(cfg.weight_mu, cfg.weight_sigma, size=hops)
        chain = []
        for h in range(hops):
            chain.append(len(records))
            records.append((labels[nodes[h]], labels[nodes[h + 1]], float(chain_amounts[h]), stamps[h]))
        chains.append(chain)

    graph = build_graph(records)
    planted = [graph.edge(chain[-1]) for chain in chains]
    logger.info(
        f"Synthetic graph: {graph.num_nodes} nodes, {graph.num_edges} edges, "
        f"{len(members)} groups, {len(chains)} planted chains (gamma={cfg.gamma}, seed={cfg.seed})"
    )
    return graph, planted, chains


def generate(cfg: SynthConfig) -> Tuple[Twmdg, List[TemporalEdge]]:
    """
    Synthetic TWMDG and its planted final hops

    Node degrees follow a discrete power law with exponent gamma and are
    realised exactly by stub matching. Group edges fall inside their
    group's bursts; noise edges have uniform integer timestamps in
    [0, horizon] and smaller log-normal amounts. Each chain visits
    distinct members of one group with strictly increasing timestamps;
    its last hop lands in the final tenth of the horizon.

    Nodes without any edge do not appear in the graph.

    Raises:
        ConfigError: chains cannot be placed (too long for the node count
            or the horizon's integer granularity)
    """
    graph, planted, _ = generate_with_chains(cfg)
    return graph, planted


def write_synth(path: str, graph: Twmdg, planted: List[TemporalEdge]) -> str:
    """
    Write the graph as canonical CSV and planted hops to `<path>.planted.csv`

    Returns:
        Path of the planted-hop file
    """
    write_records(path, graph.to_records())
    planted_path = f"{path}.planted.csv"
    write_records(planted_path, graph.to_records([e.edge_id for e in planted]))
    return planted_path
