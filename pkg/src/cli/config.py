"""
Run Configuration
Flat, validated settings for one CLI invocation
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.embedding.sgns import SgnsParams
from src.ingest.records import CrawlCaps, TxFilter
from src.linkpred.classifier import ClassifierParams
from src.linkpred.pipeline import EvalMethod
from src.linkpred.split import SplitSpec
from src.synth.generator import SynthConfig
from src.utils.errors import ConfigError, UsageError
from src.walks.sampler import StaticWalkMode
from src.walks.strategies import TemporalStrategy, WalkConfig, WeightStrategy

REQUIRED_SETTINGS: Dict[str, tuple] = {
    "ingest": ("input", "output"),
    "crawl": ("center", "output"),
    "stats": ("input",),
    "walk": ("input", "output"),
    "embed": ("input", "output"),
    "eval": ("input",),
    "synth": ("output",),
    "sweep": ("input", "vary", "values"),
}

UNBOUNDED = ("inf", "none", "unbounded")

# Never echoed into .config files
NOT_WRITTEN = {"command", "config", "api_key"}


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class RunConfig(BaseModel):
    """
    Every setting a subcommand can consume

    Field names are the flag names (hyphens become underscores) and the
    keys of config/defaults.json sections.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Literal["ingest", "crawl", "stats", "walk", "embed", "eval", "synth", "sweep"]
    config: Optional[str] = None

    # run
    input: Optional[str] = None
    output: Optional[str] = None
    format: Literal["csv", "etherscan"] = "csv"
    seed: int = Field(42, ge=0, lt=2**64)
    workers: int = Field(0, ge=0)

    # walk
    l: int = Field(10, ge=2)
    r: int = Field(20, ge=1)
    alpha: float = Field(0.5, ge=0.0, le=1.0)
    temporal: TemporalStrategy = TemporalStrategy.BIASED_RECENT
    weighted: WeightStrategy = WeightStrategy.BIASED_RAW
    min_emit_length: int = Field(2, ge=2)
    static_mode: Optional[StaticWalkMode] = None
    verify: bool = False

    # node2vec baseline
    p: float = Field(1.0, gt=0.0)
    q: float = Field(1.0, gt=0.0)

    # sgns
    d: int = Field(128, ge=1)
    k: int = Field(4, ge=1)
    n_neg: int = Field(5, ge=1)
    epochs: int = Field(5, ge=1)
    lr: float = Field(0.025, gt=0.0)
    min_count: int = Field(1, ge=0)
    batch_pairs: int = Field(2048, ge=1)

    # eval
    method: EvalMethod = EvalMethod.TWMDG_BIASED
    train_fraction: float = Field(0.5, gt=0.0, lt=1.0)
    l2: float = Field(1e-4, ge=0.0)
    clf_epochs: int = Field(50, ge=1)
    clf_lr: float = Field(0.05, gt=0.0)
    shuffle_labels: bool = False

    # stats
    xmin: int = Field(1, ge=1)
    gnuplot: bool = False
    subgraph_center: Optional[str] = None

    # synth
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

    # crawl
    center: Optional[str] = None
    k_in: Optional[int] = Field(1, ge=0)
    k_out: Optional[int] = Field(1, ge=0)
    max_accounts: int = Field(1000, ge=1)
    max_tx_per_account: int = Field(10_000, ge=1)
    page_size: int = Field(10_000, ge=1)
    rate_limit: float = Field(5.0, gt=0.0)
    fixture_dir: Optional[str] = None
    api_url: str = "https://api.etherscan.io/api"
    api_key: Optional[str] = None
    require_success: bool = True
    require_nonzero: bool = True
    drop_missing_recipient: bool = True

    # sweep
    vary: Optional[Literal["k", "l", "r", "d"]] = None
    values: Optional[List[int]] = None
    methods: List[EvalMethod] = Field(default_factory=lambda: list(EvalMethod))

    @field_validator("k_in", "k_out", mode="before")
    @classmethod
    def _unbounded_depth(cls, value: Any) -> Any:
        if isinstance(value, str) and value.strip().lower() in UNBOUNDED:
            return None
        return value

    @field_validator("values", "methods", mode="before")
    @classmethod
    def _comma_lists(cls, value: Any) -> Any:
        return _split_list(value)

    @model_validator(mode="after")
    def _cross_field(self):
        if self.min_emit_length > self.l:
            raise ValueError(f"min_emit_length ({self.min_emit_length}) must not exceed l ({self.l})")
        if self.values is not None and not self.values:
            raise ValueError("values must list at least one integer")
        return self

    @classmethod
    def from_settings(cls, command: str, settings: Dict[str, Any]) -> "RunConfig":
        """
        Validate merged settings

        Raises:
            ConfigError: a value fails its constraint
        """
        try:
            return cls(command=command, **settings)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
            )
            raise ConfigError(f"invalid configuration: {problems}") from e

    def require(self) -> None:
        """Raises UsageError when the subcommand's mandatory settings are unset."""
        missing = [name for name in REQUIRED_SETTINGS[self.command] if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name.replace('_', '-')}" for name in missing)
            raise UsageError(f"{self.command} requires {flags}")

    # -- component configs ---------------------------------------------------

    def walk_config(self) -> WalkConfig:
        return WalkConfig(
            walk_length=self.l,
            walks_per_node=self.r,
            alpha=self.alpha,
            temporal=self.temporal,
            weighted=self.weighted,
            min_emit_length=self.min_emit_length,
            seed=self.seed,
        )

    def sgns_params(self) -> SgnsParams:
        return SgnsParams(
            d=self.d, k=self.k, n_neg=self.n_neg, epochs=self.epochs,
            lr=self.lr, seed=self.seed, min_count=self.min_count, batch_pairs=self.batch_pairs,
        )

    def split_spec(self) -> SplitSpec:
        return SplitSpec(train_fraction=self.train_fraction)

    def classifier_params(self) -> ClassifierParams:
        return ClassifierParams(l2=self.l2, epochs=self.clf_epochs, lr=self.clf_lr)

    def synth_config(self) -> SynthConfig:
        return SynthConfig(
            n_nodes=self.n_nodes,
            gamma=self.gamma,
            horizon=self.horizon,
            n_background_edges=self.n_background_edges,
            n_chains=self.n_chains,
            chain_length=self.chain_length,
            weight_mu=self.weight_mu,
            weight_sigma=self.weight_sigma,
            group_size=self.group_size,
            noise_fraction=self.noise_fraction,
            bursts_per_group=self.bursts_per_group,
            burst_width=self.burst_width,
            noise_amount_scale=self.noise_amount_scale,
            seed=self.seed,
        )

    def tx_filter(self) -> TxFilter:
        return TxFilter(
            require_success=self.require_success,
            require_nonzero=self.require_nonzero,
            drop_missing_recipient=self.drop_missing_recipient,
        )

    def crawl_caps(self) -> CrawlCaps:
        return CrawlCaps(
            max_accounts=self.max_accounts,
            max_tx_per_account=self.max_tx_per_account,
            page_size=self.page_size,
        )

    # -- echo ----------------------------------------------------------------

    def settings(self) -> Dict[str, Any]:
        """Flat JSON-safe settings without secrets; unbounded depths spelled 'inf'."""
        data = self.model_dump(mode="json", exclude=NOT_WRITTEN)
        for depth in ("k_in", "k_out"):
            if data[depth] is None:
                data[depth] = "inf"
        return data
