"""Media-plan optimizer: pick ad sites that maximize non-overlapping exposure.

Websites form a directed graph weighted by shared-audience fractions;
a campaign fixes a budget, a number of sites to buy, and demographic
targeting; a seeded genetic algorithm finds the subset whose exposures
survive overlap discounting best. The package exposes the library
here, a CLI (``adplanner``), and an HTTP job service
(``adplanner.service``).
"""

from .campaign import (
    MODE_IMPRESSIONS,
    MODE_REACH,
    OBJECTIVE_MODES,
    CampaignSpec,
    campaign_from_doc,
    campaign_to_doc,
)
from .constraints import (
    CPM_MAX_USD,
    CPM_MIN_USD,
    CostModel,
    Targeting,
    bucket_vocabulary,
    build_cost_model,
    demographic_filter,
    impressions_per_site,
)
from .ga import (
    GaParams,
    GenerationStat,
    InfeasibleError,
    OptimizationResult,
    crossover,
    mutate,
    optimize,
    result_from_doc,
    result_to_doc,
)
from .ingest import (
    AGE_BUCKETS,
    INCOME_BUCKETS,
    CrawlFileError,
    CrawlRecord,
    SyntheticConfig,
    UpstreamRef,
    build_from_crawl,
    generate_synthetic,
    parse_crawl_records,
    prune,
    serialize_crawl_records,
)
from .netio import (
    NetworkFileError,
    network_content_hash,
    network_to_doc,
    parse_network_file,
    serialize_network,
)
from .network import Edge, Violation, Website, WebsiteNetwork, validate_network
from .objective import PlanMetrics, ScoreBreakdown, fitness, plan_metrics, site_weights
from .oracle import enumerate_path_overlap, exhaustive_optimize
from .overlap import (
    MatrixFileError,
    OverlapMatrix,
    PathResult,
    max_product_path,
    overlap_matrix,
    parse_matrix_file,
    serialize_matrix,
    symmetrize,
)

__version__ = "0.1.0"

__all__ = [
    "AGE_BUCKETS",
    "CPM_MAX_USD",
    "CPM_MIN_USD",
    "CampaignSpec",
    "CostModel",
    "CrawlFileError",
    "CrawlRecord",
    "Edge",
    "GaParams",
    "GenerationStat",
    "INCOME_BUCKETS",
    "InfeasibleError",
    "MODE_IMPRESSIONS",
    "MODE_REACH",
    "MatrixFileError",
    "NetworkFileError",
    "OBJECTIVE_MODES",
    "OptimizationResult",
    "OverlapMatrix",
    "PathResult",
    "PlanMetrics",
    "ScoreBreakdown",
    "SyntheticConfig",
    "Targeting",
    "UpstreamRef",
    "Violation",
    "Website",
    "WebsiteNetwork",
    "bucket_vocabulary",
    "build_cost_model",
    "build_from_crawl",
    "campaign_from_doc",
    "campaign_to_doc",
    "crossover",
    "demographic_filter",
    "enumerate_path_overlap",
    "exhaustive_optimize",
    "fitness",
    "generate_synthetic",
    "impressions_per_site",
    "max_product_path",
    "mutate",
    "network_content_hash",
    "network_to_doc",
    "optimize",
    "overlap_matrix",
    "parse_crawl_records",
    "parse_matrix_file",
    "parse_network_file",
    "plan_metrics",
    "prune",
    "result_from_doc",
    "result_to_doc",
    "serialize_crawl_records",
    "serialize_matrix",
    "serialize_network",
    "site_weights",
    "symmetrize",
    "validate_network",
    "__version__",
]
