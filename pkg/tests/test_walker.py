"""Tests for the step graph, longest walks, simulation and certificates."""
import dataclasses

import networkx as nx
import pytest

from errors import CertificationError, DomainError, MembershipError
from sequences import FIBONACCI, PELL, SequenceParams
from stepper import (
    RigiditySolution,
    StepWitness,
    WalkConfig,
    enumerate_steps_by_digits,
    predicted_large_m_steps,
)
from walker import (
    TERMINATES,
    WalkFailure,
    WalkRecord,
    build_step_graph,
    certify_termination,
    check_certificate,
    longest_walk,
    parse_blocks,
    simulate_walk,
    start_index_for_value,
    steps_in_window,
    validate_walk,
    walk_lengths_by_start,
    walk_values,
)

SILVER = SequenceParams(3, 1)


def fib(base, digits=1):
    return WalkConfig(FIBONACCI, base, digits)


class TestStepGraph:
    def test_base_ten_edges(self):
        graph = build_step_graph(fib(10), scan_margin=5)
        assert graph.number_of_nodes() == 13 + 5 + 1
        for source, target in [(0, 1), (0, 6), (1, 7), (2, 7), (3, 8), (4, 9), (5, 10), (6, 11)]:
            assert graph.has_edge(source, target)
        assert graph.out_degree(7) == 0
        assert nx.is_directed_acyclic_graph(graph)

    def test_edges_carry_witnesses(self):
        graph = build_step_graph(fib(10), scan_margin=1)
        assert graph.edges[2, 7]["witnesses"] == [StepWitness(2, 5, 1, 3)]

    def test_margin_must_be_positive(self):
        with pytest.raises(DomainError):
            build_step_graph(fib(10), scan_margin=0)

    def test_margin_defaults_to_config(self, clean_config):
        clean_config.update("certify", "scan_margin", 3)
        assert build_step_graph(fib(10)).number_of_nodes() == 13 + 3 + 1


class TestLongestWalk:
    def test_base_ten(self):
        length, walk = longest_walk(fib(10))
        assert length == 2
        assert walk.indices() == [0, 1, 7]
        assert walk_values(FIBONACCI, walk) == [0, 1, 13]
        assert walk.nodes == 3

    def test_base_four(self):
        length, walk = longest_walk(fib(4))
        assert length == 3
        assert walk.indices() == [0, 1, 5, 8]
        assert walk_values(FIBONACCI, walk) == [0, 1, 5, 21]

    def test_base_two(self):
        length, walk = longest_walk(fib(2))
        assert length == 3
        assert walk.indices() == [0, 1, 3, 5]
        assert walk_values(FIBONACCI, walk) == [0, 1, 2, 5]

    @pytest.mark.parametrize("cfg", [fib(2), fib(4), fib(10), fib(11), WalkConfig(PELL, 14, 1),
                                     WalkConfig(SILVER, 8, 1)])
    def test_longest_walk_is_valid(self, cfg):
        _, walk = longest_walk(cfg)
        assert validate_walk(cfg, walk)

    def test_oracle_drives_the_same_dp(self):
        cfg = fib(4)
        assert longest_walk(cfg, step_source=enumerate_steps_by_digits) == longest_walk(cfg)

    def test_lengths_by_start(self):
        lengths = walk_lengths_by_start(fib(10), scan_margin=5)
        assert lengths[0] == 2
        assert [lengths[n] for n in range(1, 7)] == [1] * 6
        assert lengths[7] == 0
        assert max(lengths.values()) == 2

    def test_validate_walk_rejects_broken_chain(self):
        walk = WalkRecord(0, (StepWitness(0, 1, 1, 1), StepWitness(2, 5, 1, 3)))
        assert not validate_walk(fib(10), walk)

    def test_validate_walk_rejects_invalid_step(self):
        assert not validate_walk(fib(10), WalkRecord(2, (StepWitness(2, 5, 1, 4),)))


class TestSimulateWalk:
    def test_single_block(self):
        result = simulate_walk(fib(10), 2, [(1, 3)])
        assert isinstance(result, WalkRecord)
        assert walk_values(FIBONACCI, result) == [1, 13]

    def test_failure(self):
        result = simulate_walk(fib(10), 2, [(1, 4)])
        assert result == WalkFailure(0, 14, WalkRecord(2))

    def test_two_blocks(self):
        result = simulate_walk(fib(4), 3, [(1, 0), (1, 2)])
        assert walk_values(FIBONACCI, result) == [2, 8, 34]
        assert result.steps == (StepWitness(3, 3, 1, 0), StepWitness(6, 3, 1, 2))

    def test_failure_keeps_reached_prefix(self):
        result = simulate_walk(fib(4), 3, [(1, 0), (1, 3)])
        assert isinstance(result, WalkFailure)
        assert result.block_index == 1
        assert result.value == 35
        assert result.reached.indices() == [3, 6]

    def test_zero_append_from_zero_fails(self):
        result = simulate_walk(fib(10), 0, [(1, 0)])
        assert isinstance(result, WalkFailure)

    @pytest.mark.parametrize("blocks", [[(2, 0)], [(0, 0)], [(1, 10)], [(1, -1)]])
    def test_malformed_blocks(self, blocks):
        with pytest.raises(DomainError):
            simulate_walk(fib(10), 2, blocks)

    def test_parse_blocks(self):
        assert parse_blocks("1:3, 1:2") == [(1, 3), (1, 2)]
        with pytest.raises(DomainError):
            parse_blocks("1-3")
        with pytest.raises(DomainError):
            parse_blocks("")

    def test_start_index_for_value(self):
        assert start_index_for_value(FIBONACCI, 1) == 1
        with pytest.raises(MembershipError) as excinfo:
            start_index_for_value(FIBONACCI, 4)
        assert excinfo.value.nearest == [3, 5]
        assert "nearest members: 3, 5" in str(excinfo.value)


class TestStepsInWindow:
    def test_single_index(self):
        assert steps_in_window(fib(10), from_index=7) == []
        assert steps_in_window(fib(10), from_index=2) == [StepWitness(2, 5, 1, 3)]

    def test_all_indices(self):
        witnesses = steps_in_window(fib(4), scan_margin=5)
        assert StepWitness(7, 3, 1, 3) in witnesses
        assert witnesses == sorted(witnesses, key=lambda w: (w.m, w.t, w.k))

    def test_base_eleven_rigid_step(self):
        assert StepWitness(11, 5, 1, 8) in steps_in_window(fib(11), scan_margin=5)


class TestCertificates:
    def test_base_ten(self):
        cert = certify_termination(fib(10), scan_margin=20)
        assert cert.conclusion == TERMINATES
        assert cert.threshold == 13
        assert cert.rigidity_solutions == ()
        assert check_certificate(cert)

    def test_pell(self):
        cert = certify_termination(WalkConfig(PELL, 14, 1), scan_margin=20)
        assert cert.rigidity_solutions == (RigiditySolution(3, 1),)
        assert cert.threshold == 8
        assert check_certificate(cert)

    def test_q_equals_one(self):
        cert = certify_termination(WalkConfig(SILVER, 8, 1), scan_margin=20)
        assert cert.conclusion == TERMINATES
        assert check_certificate(cert)

    def test_q_equals_one_with_rigidity_solution(self):
        cfg = WalkConfig(SILVER, 3, 1)
        cert = certify_termination(cfg, scan_margin=20)
        assert cert.k_exact == 1
        assert cert.rigidity_solutions == (RigiditySolution(1, 1),)
        assert cert.threshold > cert.k_exact
        assert predicted_large_m_steps(cfg, cert.threshold) == []
        assert check_certificate(cert)

    def test_q_equals_one_negative_remainder_is_required(self, monkeypatch):
        import walker

        cfg = WalkConfig(SILVER, 3, 1)
        cert = certify_termination(cfg, scan_margin=5)
        monkeypatch.setattr(walker, "_forced_remainder_negative", lambda params, threshold, solution: False)
        assert not check_certificate(cert)
        with pytest.raises(CertificationError) as excinfo:
            certify_termination(cfg, scan_margin=5)
        assert "Q = 1" in excinfo.value.condition
        assert excinfo.value.witness == RigiditySolution(1, 1)

    @pytest.mark.parametrize("base, digits", [(2, 1), (4, 1), (11, 1), (2, 2), (10, 2)])
    def test_grid(self, base, digits):
        assert check_certificate(certify_termination(fib(base, digits), scan_margin=10))

    def test_margin_must_be_positive(self):
        with pytest.raises(DomainError):
            certify_termination(fib(10), scan_margin=0)

    @pytest.mark.parametrize("change", [
        {"threshold": 12},
        {"k_exact": 5, "threshold": 12},
        {"n_star": 5},
        {"m_star": 10, "threshold": 13},
        {"rigidity_solutions": (RigiditySolution(3, 1),)},
        {"conclusion": "UNKNOWN"},
    ])
    def test_tampered_certificate_is_rejected(self, change):
        cert = certify_termination(fib(10), scan_margin=10)
        assert not check_certificate(dataclasses.replace(cert, **change))

    def test_lowered_thresholds_are_rejected(self):
        cert = certify_termination(fib(4), scan_margin=10)
        forged = dataclasses.replace(cert, m_star=0, n_star=0, k_exact=0, threshold=1)
        assert not check_certificate(forged)

    def test_certification_error_carries_condition(self):
        error = CertificationError("no step from any m >= threshold", StepWitness(1, 1, 1, 0))
        assert error.condition == "no step from any m >= threshold"
        assert "witness" in str(error)
