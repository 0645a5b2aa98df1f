"""Tests for the per-agent state types and update operations."""

import numpy as np
import pytest

from normsim import (
    AgentState,
    ConfigurationError,
    ContractViolationError,
    Population,
    UtilityTerms,
    classical_hk_step,
    complete_graph,
    evaluate_utility,
    neighbor_set,
    update_action,
    update_opinion,
)
from normsim.graph import Graph

from oracles import enumerate_neighbors, grid_argmax_action, quadratic_utility


def make_population(opinions, actions, openness=0.3, commitment=0.5):
    n = len(opinions)
    return Population(opinions, actions, np.full(n, openness), np.full(n, commitment))


class TestStateTypes:
    def test_agent_state_holds_values(self):
        a = AgentState(opinion=0.1, action=0.9, openness=0.25, commitment=0.7)
        assert a.opinion == 0.1 and a.commitment == 0.7

    @pytest.mark.parametrize("field", ["opinion", "action", "openness", "commitment"])
    @pytest.mark.parametrize("bad", [-0.01, 1.01, float("nan"), float("inf")])
    def test_agent_state_rejects_out_of_range(self, field, bad):
        kwargs = dict(opinion=0.5, action=0.5, openness=0.5, commitment=0.5)
        kwargs[field] = bad
        with pytest.raises(ContractViolationError):
            AgentState(**kwargs)

    def test_population_roundtrip_and_immutability(self):
        pop = make_population([0.1, 0.2], [0.3, 0.4])
        assert len(pop) == 2
        assert pop.agent(1) == AgentState(0.2, 0.4, 0.3, 0.5)
        with pytest.raises(ValueError):
            pop.opinions[0] = 0.9

    def test_population_rejects_mismatched_lengths(self):
        with pytest.raises(ContractViolationError):
            Population([0.1, 0.2], [0.3], [0.5, 0.5], [0.5, 0.5])

    def test_population_rejects_empty(self):
        with pytest.raises(ContractViolationError):
            Population([], [], [], [])

    def test_population_rejects_out_of_range(self):
        with pytest.raises(ContractViolationError):
            make_population([0.1, 1.2], [0.3, 0.4])

    def test_utility_terms_validated(self):
        with pytest.raises(ContractViolationError):
            UtilityTerms(updated_opinion=0.5, norm=2.0, commitment=0.5)


class TestNeighborSet:
    def test_ieee_boundary_arithmetic(self):
        # 0.5 - 0.2 lands exactly on the 0.3 double, 0.8 - 0.5 one ulp above
        # it, so only the lower neighbor is captured at openness 0.3.
        pop = make_population([0.1, 0.5, 0.9], [0.2, 0.5, 0.8])
        g = complete_graph(3)
        got = neighbor_set(1, pop, g, openness=0.3)
        assert got == enumerate_neighbors(1, pop.opinions, pop.actions, 0.3, g)
        assert got == {0}

    def test_boundary_inclusive_with_representable_distances(self):
        pop = make_population([0.5, 0.5, 0.5], [0.25, 0.5, 0.75])
        got = neighbor_set(0, pop, complete_graph(3), openness=0.25)
        assert got == {1, 2}

    def test_full_openness_reaches_everyone(self):
        rng = np.random.default_rng(3)
        pop = make_population(rng.uniform(0, 1, 12), rng.uniform(0, 1, 12))
        got = neighbor_set(4, pop, complete_graph(12), openness=1.0)
        assert got == set(range(12)) - {4}

    def test_distant_actions_yield_empty_set(self):
        pop = make_population([0.5, 0.3, 0.7], [0.5, 0.0, 1.0])
        assert neighbor_set(0, pop, complete_graph(3), openness=0.4) == set()

    def test_self_excluded_even_when_own_action_close(self):
        pop = make_population([0.5, 0.9], [0.5, 0.9])
        assert neighbor_set(0, pop, complete_graph(2), openness=0.2) == set()

    def test_graph_filters_candidates(self):
        pop = make_population([0.5, 0.5, 0.5], [0.5, 0.5, 0.5])
        path = Graph(3, [(0, 1), (1, 2)])
        assert neighbor_set(0, pop, path, openness=1.0) == {1}
        assert neighbor_set(1, pop, path, openness=1.0) == {0, 2}

    def test_defaults_to_own_trait(self):
        pop = Population([0.5, 0.6], [0.5, 0.6], [0.2, 0.2], [0.5, 0.5])
        assert neighbor_set(0, pop, complete_graph(2)) == {1}

    def test_bad_index_is_contract_violation(self):
        pop = make_population([0.5], [0.5])
        with pytest.raises(ContractViolationError):
            neighbor_set(1, pop, complete_graph(1), openness=0.5)

    def test_graph_size_mismatch_is_configuration_error(self):
        pop = make_population([0.5, 0.5], [0.5, 0.5])
        with pytest.raises(ConfigurationError):
            neighbor_set(0, pop, complete_graph(3), openness=0.5)

    def test_matches_enumeration_on_random_states(self):
        rng = np.random.default_rng(7)
        g = complete_graph(20)
        for _ in range(50):
            pop = make_population(rng.uniform(0, 1, 20), rng.uniform(0, 1, 20))
            i = int(rng.integers(20))
            eps = float(rng.uniform(0, 1))
            assert neighbor_set(i, pop, g, openness=eps) == enumerate_neighbors(
                i, pop.opinions, pop.actions, eps, g
            )


class TestUpdateOpinion:
    def test_empty_neighbors_keep_opinion(self):
        pop = make_population([0.37, 0.9], [0.37, 0.9])
        assert update_opinion(0, pop, set()) == 0.37

    def test_hand_example_symmetric_actions(self):
        pop = make_population([0.5, 0.1, 0.1], [0.9, 0.2, 0.8])
        assert update_opinion(0, pop, {1, 2}) == pytest.approx(0.5, abs=1e-15)

    def test_neighbors_at_own_opinion_leave_it_fixed(self):
        pop = make_population([0.42, 0.1, 0.2], [0.9, 0.42, 0.42])
        assert update_opinion(0, pop, {1, 2}) == pytest.approx(0.42, abs=1e-15)

    def test_bad_neighbor_index_rejected(self):
        pop = make_population([0.5, 0.5], [0.5, 0.5])
        with pytest.raises(ContractViolationError):
            update_opinion(0, pop, {5})


class TestEvaluateUtility:
    def test_zero_at_perfect_alignment(self):
        terms = UtilityTerms(updated_opinion=0.6, norm=0.6, commitment=0.3)
        assert evaluate_utility(0.6, terms) == 0.0

    def test_hand_value_balanced_weights(self):
        terms = UtilityTerms(updated_opinion=1.0, norm=1.0, commitment=0.5)
        assert evaluate_utility(0.0, terms) == pytest.approx(-1.0, abs=1e-15)

    def test_hand_value_full_commitment_ignores_norm(self):
        terms = UtilityTerms(updated_opinion=0.7, norm=0.0, commitment=1.0)
        assert evaluate_utility(0.3, terms) == pytest.approx(-0.16, abs=1e-15)

    def test_never_positive(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            terms = UtilityTerms(*rng.uniform(0, 1, 3))
            assert evaluate_utility(float(rng.uniform(0, 1)), terms) <= 0.0

    def test_concave_along_candidates(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            terms = UtilityTerms(
                float(rng.uniform(0, 1)), float(rng.uniform(0, 1)), float(rng.uniform(0.01, 0.99))
            )
            a, b = sorted(rng.uniform(0, 1, 2))
            mid = evaluate_utility((a + b) / 2, terms)
            ends = (evaluate_utility(a, terms) + evaluate_utility(b, terms)) / 2
            assert mid >= ends - 1e-12

    def test_candidate_outside_range_rejected(self):
        terms = UtilityTerms(0.5, 0.5, 0.5)
        with pytest.raises(ContractViolationError):
            evaluate_utility(1.5, terms)

    def test_matches_oracle_formula(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            x_new, norm, phi, y = rng.uniform(0, 1, 4)
            terms = UtilityTerms(float(x_new), float(norm), float(phi))
            assert evaluate_utility(float(y), terms) == pytest.approx(
                quadratic_utility(y, x_new, norm, phi), abs=1e-15
            )


class TestUpdateAction:
    def test_full_commitment_returns_opinion(self):
        assert update_action(UtilityTerms(0.42, 0.9, 1.0)) == 0.42

    def test_zero_commitment_returns_norm(self):
        assert update_action(UtilityTerms(0.42, 0.9, 0.0)) == 0.9

    def test_hand_blend(self):
        got = update_action(UtilityTerms(0.4, 0.6, 0.7))
        assert got == pytest.approx(0.46, abs=1e-15)
        assert abs(got - grid_argmax_action(0.4, 0.6, 0.7)) <= 1e-5

    def test_matches_grid_search_on_random_terms(self):
        rng = np.random.default_rng(9)
        for _ in range(300):
            x_new, norm, phi = (float(v) for v in rng.uniform(0, 1, 3))
            closed = update_action(UtilityTerms(x_new, norm, phi))
            assert abs(closed - grid_argmax_action(x_new, norm, phi)) <= 1e-5

    def test_blend_stays_between_inputs(self):
        rng = np.random.default_rng(10)
        for _ in range(300):
            x_new, norm, phi = (float(v) for v in rng.uniform(0, 1, 3))
            got = update_action(UtilityTerms(x_new, norm, phi))
            assert min(x_new, norm) - 1e-15 <= got <= max(x_new, norm) + 1e-15


class TestClassicalHk:
    def test_fixed_point_when_identical(self):
        g = complete_graph(4)
        assert classical_hk_step([0.3] * 4, 0.2, g) == [0.3] * 4

    def test_no_influence_outside_confidence(self):
        assert classical_hk_step([0.0, 1.0], 0.4, complete_graph(2)) == [0.0, 1.0]

    def test_mutual_averaging_inside_confidence(self):
        assert classical_hk_step([0.0, 1.0], 1.0, complete_graph(2)) == [0.5, 0.5]

    def test_graph_restricts_influence(self):
        disconnected = Graph(2, [])
        assert classical_hk_step([0.0, 1.0], 1.0, disconnected) == [0.0, 1.0]

    def test_size_mismatch_rejected(self):
        with pytest.raises(ConfigurationError):
            classical_hk_step([0.1, 0.2], 0.5, complete_graph(3))


class TestRangeClosure:
    def test_full_update_stays_in_unit_interval(self):
        rng = np.random.default_rng(11)
        g = complete_graph(15)
        for _ in range(50):
            pop = Population(
                rng.uniform(0, 1, 15),
                rng.uniform(0, 1, 15),
                rng.uniform(0, 1, 15),
                rng.uniform(0, 1, 15),
            )
            norm = float(pop.actions.mean())
            for i in range(15):
                nbrs = neighbor_set(i, pop, g)
                x_new = update_opinion(i, pop, nbrs)
                assert 0.0 <= x_new <= 1.0
                y_new = update_action(UtilityTerms(x_new, norm, float(pop.commitment[i])))
                assert 0.0 <= y_new <= 1.0
