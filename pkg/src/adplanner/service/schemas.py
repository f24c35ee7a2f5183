"""Request models for the HTTP API.

Only requests get pydantic models (they produce the field-level 400
messages the API promises); responses are plain dicts assembled from
the domain types, so there is exactly one serialization of each.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..campaign import MODE_IMPRESSIONS, CampaignSpec
from ..constraints import Targeting
from ..ga import GaParams


class TargetingIn(BaseModel):
    age_buckets: list[str] = Field(default_factory=list)
    income_buckets: list[str] = Field(default_factory=list)

    def to_domain(self) -> Targeting:
        return Targeting(
            age_buckets=frozenset(self.age_buckets),
            income_buckets=frozenset(self.income_buckets),
        )


class GaParamsIn(BaseModel):
    population_size: int = Field(default=100, ge=2)
    max_generations: int = Field(default=200, ge=1)
    stall_generations: int = Field(default=50, ge=1)
    tournament_size: int = Field(default=3, ge=1)
    crossover_rate: float = Field(default=0.9, ge=0.0, le=1.0)
    mutation_rate: float = Field(default=0.2, ge=0.0, le=1.0)
    elite_count: int = Field(default=2, ge=0)

    @model_validator(mode="after")
    def _elite_below_population(self) -> "GaParamsIn":
        if self.elite_count >= self.population_size:
            raise ValueError("elite_count must be smaller than population_size")
        return self

    def to_domain(self) -> GaParams:
        return GaParams(**self.model_dump())


class CampaignSpecIn(BaseModel):
    budget_usd: float = Field(gt=0)
    num_sites: int = Field(ge=1)
    targeting: TargetingIn = Field(default_factory=TargetingIn)
    objective_mode: Literal["unique-impressions", "unique-reach"] = MODE_IMPRESSIONS
    ga_params: GaParamsIn | None = None
    seed: int | None = Field(default=None, ge=0)

    def to_domain(self, seed: int) -> CampaignSpec:
        """Domain campaign with the seed resolved and GA defaults applied."""
        params = self.ga_params if self.ga_params is not None else GaParamsIn()
        return CampaignSpec(
            budget_usd=self.budget_usd,
            num_sites=self.num_sites,
            targeting=self.targeting.to_domain(),
            objective_mode=self.objective_mode,
            ga_params=params.to_domain(),
            seed=seed,
        )
