"""Campaign parameters shared by the library, the service, and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Any, Mapping

from .constraints import Targeting

if TYPE_CHECKING:
    from .ga import GaParams

MODE_IMPRESSIONS = "unique-impressions"
MODE_REACH = "unique-reach"
OBJECTIVE_MODES = (MODE_IMPRESSIONS, MODE_REACH)


@dataclass(frozen=True)
class CampaignSpec:
    """Everything an advertiser specifies for one optimization run.

    ``seed`` may be left None at the API boundary; the service draws
    one and echoes it so the run stays reproducible.
    """

    budget_usd: float
    num_sites: int
    targeting: Targeting = Targeting()
    objective_mode: str = MODE_IMPRESSIONS
    ga_params: "GaParams | None" = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if not self.budget_usd > 0:
            raise ValueError(f"budget_usd must be > 0, got {self.budget_usd}")
        if self.num_sites < 1:
            raise ValueError(f"num_sites must be >= 1, got {self.num_sites}")
        if self.objective_mode not in OBJECTIVE_MODES:
            raise ValueError(
                f"objective_mode must be one of {OBJECTIVE_MODES}, got {self.objective_mode!r}"
            )


def campaign_to_doc(spec: CampaignSpec) -> dict[str, Any]:
    """JSON-ready dict for a campaign (see campaign_from_doc)."""
    return {
        "budget_usd": spec.budget_usd,
        "num_sites": spec.num_sites,
        "targeting": {
            "age_buckets": sorted(spec.targeting.age_buckets),
            "income_buckets": sorted(spec.targeting.income_buckets),
        },
        "objective_mode": spec.objective_mode,
        "ga_params": None if spec.ga_params is None else asdict(spec.ga_params),
        "seed": spec.seed,
    }


def campaign_from_doc(doc: Mapping[str, Any]) -> CampaignSpec:
    """Inverse of :func:`campaign_to_doc`."""
    from .ga import GaParams

    targeting = doc.get("targeting") or {}
    raw_params = doc.get("ga_params")
    return CampaignSpec(
        budget_usd=doc["budget_usd"],
        num_sites=doc["num_sites"],
        targeting=Targeting(
            age_buckets=frozenset(targeting.get("age_buckets", ())),
            income_buckets=frozenset(targeting.get("income_buckets", ())),
        ),
        objective_mode=doc.get("objective_mode", MODE_IMPRESSIONS),
        ga_params=None if raw_params is None else GaParams(**raw_params),
        seed=doc.get("seed"),
    )
