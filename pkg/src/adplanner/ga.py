"""Seeded genetic algorithm selecting the m-site subset with the best fitness.

Chromosomes are sorted tuples of m distinct feasible site ids, so every
individual is valid by construction and no penalty terms are needed.
Selection is rank-based tournament (fitness can be negative, which
rules out roulette), crossover keeps the parents' common sites and
fills the rest from their symmetric difference, and mutation swaps one
member for an outsider. All randomness flows through one
``random.Random(seed)`` consumed in a fixed order, so a run is a pure
function of its inputs and seed.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from .campaign import CampaignSpec
from .constraints import build_cost_model
from .network import WebsiteNetwork
from .objective import PlanMetrics, fitness, plan_metrics, site_weights
from .overlap import OverlapMatrix

Chromosome = tuple[str, ...]


class InfeasibleError(ValueError):
    """Fewer feasible sites than the campaign asks to select."""

    def __init__(self, feasible_count: int, requested: int):
        super().__init__(
            f"infeasible: {feasible_count} feasible sites, requested {requested}"
        )
        self.feasible_count = feasible_count
        self.requested = requested


@dataclass(frozen=True)
class GaParams:
    """Hyperparameters; the defaults are tuned for networks of a few hundred nodes."""

    population_size: int = 100
    max_generations: int = 200
    stall_generations: int = 50
    tournament_size: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    elite_count: int = 2

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ValueError(f"population_size must be >= 2, got {self.population_size}")
        if self.max_generations < 1:
            raise ValueError(f"max_generations must be >= 1, got {self.max_generations}")
        if self.stall_generations < 1:
            raise ValueError(f"stall_generations must be >= 1, got {self.stall_generations}")
        if self.tournament_size < 1:
            raise ValueError(f"tournament_size must be >= 1, got {self.tournament_size}")
        for name in ("crossover_rate", "mutation_rate"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError(
                f"elite_count must be in [0, population_size), got {self.elite_count}"
            )


@dataclass(frozen=True)
class GenerationStat:
    """One history row: the population's best and mean fitness at a generation."""

    generation: int
    best_fitness: float
    mean_fitness: float


@dataclass(frozen=True)
class OptimizationResult:
    selection: Chromosome
    fitness: float
    history: tuple[GenerationStat, ...]
    metrics: PlanMetrics
    seed: int
    params: GaParams


def crossover(parent_a: Chromosome, parent_b: Chromosome, rng: random.Random) -> Chromosome:
    """Keep the intersection, fill the remaining slots from the symmetric difference."""
    common = set(parent_a) & set(parent_b)
    pool = sorted(set(parent_a) ^ set(parent_b))
    need = len(parent_a) - len(common)
    return tuple(sorted(common | set(rng.sample(pool, need))))


def mutate(
    selection: Chromosome,
    feasible: Sequence[str],
    rng: random.Random,
    mutation_rate: float,
) -> Chromosome:
    """With probability ``mutation_rate``, swap one member for a feasible outsider."""
    if rng.random() >= mutation_rate:
        return selection
    outsiders = sorted(set(feasible) - set(selection))
    if not outsiders:
        return selection
    member = rng.choice(selection)
    outsider = rng.choice(outsiders)
    return tuple(sorted((set(selection) - {member}) | {outsider}))


def optimize(
    net: WebsiteNetwork,
    matrix: OverlapMatrix,
    feasible: Iterable[str],
    campaign: CampaignSpec,
    params: GaParams | None = None,
    seed: int | None = None,
    progress: Callable[[GenerationStat], None] | None = None,
) -> OptimizationResult:
    """Run the GA and return the best individual ever seen, with full history.

    Generation 0 is the uniform-random initial population; each later
    generation is built from elites plus tournament-selected, crossed,
    mutated offspring. Stops after ``max_generations`` generations or
    once the best fitness has not improved for ``stall_generations``
    generations. Equal-fitness winners resolve to the
    lexicographically smallest id tuple, so results are stable.

    ``progress``, if given, is called once per generation with the
    history row just produced; it must not mutate anything the run
    depends on.
    """
    if params is None:
        params = campaign.ga_params if campaign.ga_params is not None else GaParams()
    if seed is None:
        seed = campaign.seed
    if seed is None:
        raise ValueError("seed is required for a reproducible run")
    pool = sorted(set(feasible))
    m = campaign.num_sites
    if len(pool) < m:
        raise InfeasibleError(len(pool), m)

    cost_model = build_cost_model(net)
    weights = site_weights(net, pool, campaign, cost_model)
    cache: dict[Chromosome, float] = {}

    def score(chromosome: Chromosome) -> float:
        if chromosome not in cache:
            cache[chromosome] = fitness(chromosome, matrix, weights)
        return cache[chromosome]

    def finish(best: Chromosome, history: list[GenerationStat]) -> OptimizationResult:
        return OptimizationResult(
            selection=best,
            fitness=score(best),
            history=tuple(history),
            metrics=plan_metrics(best, matrix, net, cost_model, campaign),
            seed=seed,
            params=params,
        )

    if len(pool) == m:
        # Only one possible chromosome; no search to do.
        only = tuple(pool)
        stat = GenerationStat(0, score(only), score(only))
        if progress is not None:
            progress(stat)
        return finish(only, [stat])

    rng = random.Random(seed)
    population = [tuple(sorted(rng.sample(pool, m))) for _ in range(params.population_size)]

    best: Chromosome | None = None
    best_fitness = float("-inf")
    history: list[GenerationStat] = []
    stall = 0
    for generation in range(params.max_generations):
        if generation > 0:
            ranked = sorted(population, key=lambda c: (-score(c), c))
            next_population = list(ranked[: params.elite_count])

            def tournament() -> Chromosome:
                pick = min(
                    rng.randrange(len(ranked)) for _ in range(params.tournament_size)
                )
                return ranked[pick]

            while len(next_population) < params.population_size:
                parent_a = tournament()
                parent_b = tournament()
                child = crossover(parent_a, parent_b, rng) if rng.random() < params.crossover_rate else parent_a
                next_population.append(mutate(child, pool, rng, params.mutation_rate))
            population = next_population

        scores = [score(c) for c in population]
        generation_best = max(scores)
        stat = GenerationStat(generation, generation_best, sum(scores) / len(scores))
        history.append(stat)
        if progress is not None:
            progress(stat)

        improved = generation_best > best_fitness
        for chromosome, value in zip(population, scores):
            if value > best_fitness or (value == best_fitness and (best is None or chromosome < best)):
                best = chromosome
                best_fitness = value
        stall = 0 if improved else stall + 1
        if stall >= params.stall_generations:
            break

    assert best is not None
    return finish(best, history)


def result_to_doc(result: OptimizationResult) -> dict[str, Any]:
    """JSON-ready dict mirroring OptimizationResult exactly (see result_from_doc)."""
    return asdict(result)


def result_from_doc(doc: Mapping[str, Any]) -> OptimizationResult:
    """Inverse of :func:`result_to_doc`."""
    from .objective import ScoreBreakdown

    metrics = doc["metrics"]
    return OptimizationResult(
        selection=tuple(doc["selection"]),
        fitness=doc["fitness"],
        history=tuple(GenerationStat(**row) for row in doc["history"]),
        metrics=PlanMetrics(
            gross_exposures=metrics["gross_exposures"],
            overlap_deduction=metrics["overlap_deduction"],
            net_score=metrics["net_score"],
            naive_baseline=ScoreBreakdown(**metrics["naive_baseline"]),
            baseline_selection=tuple(metrics["baseline_selection"]),
            overlap_avoided=metrics["overlap_avoided"],
        ),
        seed=doc["seed"],
        params=GaParams(**doc["params"]),
    )
