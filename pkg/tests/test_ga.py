"""Genetic search: operators, determinism, convergence, serialization."""

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adplanner import (
    CampaignSpec,
    GaParams,
    InfeasibleError,
    MODE_REACH,
    crossover,
    exhaustive_optimize,
    mutate,
    optimize,
    overlap_matrix,
    result_from_doc,
    result_to_doc,
)

from .helpers import small_network

POOL = tuple(f"s{i}" for i in range(10))


def reach_campaign(m, seed=None, params=None):
    return CampaignSpec(
        budget_usd=1000.0,
        num_sites=m,
        objective_mode=MODE_REACH,
        ga_params=params,
        seed=seed,
    )


class TestCrossover:
    @given(seed=st.integers(0, 10**6), m=st.integers(2, 8))
    def test_child_shape(self, seed, m):
        rng = random.Random(seed)
        parent_a = tuple(sorted(rng.sample(POOL, m)))
        parent_b = tuple(sorted(rng.sample(POOL, m)))
        child = crossover(parent_a, parent_b, rng)
        assert len(child) == m
        assert child == tuple(sorted(set(child)))
        assert set(child) <= set(parent_a) | set(parent_b)
        assert set(child) >= set(parent_a) & set(parent_b)

    def test_identical_parents_reproduce(self):
        parent = ("s1", "s4", "s7")
        assert crossover(parent, parent, random.Random(0)) == parent

    def test_disjoint_parents_mix(self):
        child = crossover(("s0", "s1"), ("s8", "s9"), random.Random(3))
        assert len(child) == 2
        assert set(child) <= {"s0", "s1", "s8", "s9"}


class TestMutate:
    def test_rate_zero_is_identity(self):
        sel = ("s1", "s2")
        assert mutate(sel, POOL, random.Random(0), 0.0) == sel

    def test_no_outsiders_is_identity(self):
        sel = ("s1", "s2")
        assert mutate(sel, ("s1", "s2"), random.Random(0), 1.0) == sel

    @given(seed=st.integers(0, 10**6))
    def test_rate_one_swaps_exactly_one_member(self, seed):
        rng = random.Random(seed)
        sel = tuple(sorted(rng.sample(POOL, 4)))
        child = mutate(sel, POOL, rng, 1.0)
        assert len(child) == 4
        assert child == tuple(sorted(child))
        assert len(set(sel) ^ set(child)) == 2
        assert set(child) <= set(POOL)


class TestOptimize:
    def test_fixture_finds_the_low_overlap_pair(self, abc_network):
        matrix = overlap_matrix(abc_network)
        result = optimize(
            abc_network, matrix, abc_network.node_ids(), reach_campaign(2), seed=7
        )
        assert result.selection == ("A", "C")
        assert result.fitness == 58.0

    def test_two_runs_are_identical(self, abc_network):
        matrix = overlap_matrix(abc_network)
        runs = [
            optimize(abc_network, matrix, abc_network.node_ids(), reach_campaign(2), seed=99)
            for _ in range(2)
        ]
        assert runs[0] == runs[1]

    def test_seed_comes_from_campaign_when_omitted(self, abc_network):
        matrix = overlap_matrix(abc_network)
        via_campaign = optimize(
            abc_network, matrix, abc_network.node_ids(), reach_campaign(2, seed=5)
        )
        via_arg = optimize(
            abc_network, matrix, abc_network.node_ids(), reach_campaign(2), seed=5
        )
        assert via_campaign == via_arg

    def test_missing_seed_rejected(self, abc_network):
        matrix = overlap_matrix(abc_network)
        with pytest.raises(ValueError, match="seed is required"):
            optimize(abc_network, matrix, abc_network.node_ids(), reach_campaign(2))

    def test_infeasible_request(self, abc_network):
        matrix = overlap_matrix(abc_network)
        with pytest.raises(InfeasibleError, match="infeasible: 3 feasible sites, requested 4") as exc:
            optimize(abc_network, matrix, abc_network.node_ids(), reach_campaign(4), seed=1)
        assert exc.value.feasible_count == 3
        assert exc.value.requested == 4

    def test_pool_equal_to_m_short_circuits(self, abc_network):
        matrix = overlap_matrix(abc_network)
        result = optimize(abc_network, matrix, abc_network.node_ids(), reach_campaign(3), seed=1)
        assert result.selection == ("A", "B", "C")
        assert len(result.history) == 1
        assert result.history[0].generation == 0
        assert result.history[0].best_fitness == result.fitness
        assert result.history[0].mean_fitness == result.fitness

    def test_history_is_bounded_and_monotone(self):
        net = small_network(11, node_count=10)
        matrix = overlap_matrix(net)
        params = GaParams(population_size=30, max_generations=40, stall_generations=10)
        for seed in range(10):
            result = optimize(
                net, matrix, net.node_ids(), reach_campaign(3, params=params), seed=seed
            )
            assert 1 <= len(result.history) <= params.max_generations
            bests = [row.best_fitness for row in result.history]
            # elitism carries the best individual forward untouched
            assert all(b2 >= b1 for b1, b2 in zip(bests, bests[1:]))
            assert result.fitness >= bests[-1]
            assert all(row.mean_fitness <= row.best_fitness for row in result.history)
            assert [row.generation for row in result.history] == list(range(len(bests)))

    def test_stall_cutoff(self):
        # 4 sites choose 3 leaves 4 chromosomes; a population of 100 sees the
        # optimum in generation 0, so the run must stop after exactly
        # stall_generations more generations.
        net = small_network(2, node_count=4, communities=1)
        matrix = overlap_matrix(net)
        params = GaParams(stall_generations=5)
        result = optimize(
            net, matrix, net.node_ids(), reach_campaign(3, params=params), seed=0
        )
        assert result.history[0].best_fitness == result.fitness
        assert len(result.history) == params.stall_generations + 1

    def test_matches_exhaustive_search_on_small_networks(self):
        for seed in range(5):
            net = small_network(seed, node_count=9)
            matrix = overlap_matrix(net)
            for m in (2, 3):
                campaign = reach_campaign(m)
                expected, expected_fitness = exhaustive_optimize(
                    net, matrix, net.node_ids(), campaign
                )
                result = optimize(net, matrix, net.node_ids(), campaign, seed=seed)
                assert result.fitness == pytest.approx(expected_fitness, rel=1e-12)
                assert result.selection == expected

    def test_progress_callback_sees_every_history_row(self, abc_network):
        matrix = overlap_matrix(abc_network)
        seen = []
        result = optimize(
            abc_network,
            matrix,
            abc_network.node_ids(),
            reach_campaign(2),
            seed=3,
            progress=seen.append,
        )
        assert tuple(seen) == result.history

    def test_selection_is_sorted_and_feasible(self):
        net = small_network(8, node_count=12)
        matrix = overlap_matrix(net)
        result = optimize(net, matrix, net.node_ids(), reach_campaign(4), seed=42)
        assert result.selection == tuple(sorted(result.selection))
        assert set(result.selection) <= set(net.node_ids())
        assert len(set(result.selection)) == 4


class TestGaParams:
    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"population_size": 1}, "population_size"),
            ({"max_generations": 0}, "max_generations"),
            ({"stall_generations": 0}, "stall_generations"),
            ({"tournament_size": 0}, "tournament_size"),
            ({"crossover_rate": 1.5}, "crossover_rate"),
            ({"mutation_rate": -0.1}, "mutation_rate"),
            ({"elite_count": 100}, "elite_count"),
            ({"elite_count": -1}, "elite_count"),
        ],
    )
    def test_rejects_bad_values(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            GaParams(**kwargs)


class TestResultDocs:
    def test_round_trip_through_json(self, abc_network):
        matrix = overlap_matrix(abc_network)
        result = optimize(abc_network, matrix, abc_network.node_ids(), reach_campaign(2), seed=13)
        doc = json.loads(json.dumps(result_to_doc(result)))
        assert result_from_doc(doc) == result

    def test_doc_is_plain_data(self, abc_network):
        matrix = overlap_matrix(abc_network)
        result = optimize(abc_network, matrix, abc_network.node_ids(), reach_campaign(2), seed=13)
        doc = result_to_doc(result)
        assert tuple(doc["selection"]) == ("A", "C")
        assert doc["seed"] == 13
        assert isinstance(doc["params"], dict)
        assert isinstance(doc["history"][0], dict)
