"""Tests for step enumeration, the digit-string oracle and rigidity."""
import pytest

from bounds import m_star
from errors import DomainError, ParameterError
from sequences import FIBONACCI, PELL, SequenceParams, term
from stepper import (
    RigiditySolution,
    StepWitness,
    WalkConfig,
    enumerate_steps_by_digits,
    enumerate_steps_from,
    from_digits,
    predicted_large_m_steps,
    rigidity_solutions,
    to_digits,
    validate_step,
)

SILVER = SequenceParams(3, 1)


def fib(base, digits=1):
    return WalkConfig(FIBONACCI, base, digits)


class TestWalkConfig:
    def test_defaults(self):
        cfg = WalkConfig()
        assert cfg.params == FIBONACCI
        assert (cfg.base, cfg.digits, cfg.capacity) == (10, 1, 10)

    @pytest.mark.parametrize("base, digits, invariant", [(1, 1, "b >= 2"), (10, 0, "N >= 1")])
    def test_invalid(self, base, digits, invariant):
        with pytest.raises(ParameterError) as excinfo:
            WalkConfig(FIBONACCI, base, digits)
        assert excinfo.value.invariant == invariant

    def test_witness_target(self):
        assert StepWitness(2, 5, 1, 3).target == 7


class TestEnumeration:
    @pytest.mark.parametrize("cfg, m, expected", [
        (fib(10), 2, [StepWitness(2, 5, 1, 3)]),
        (fib(10), 7, []),
        (fib(4), 3, [StepWitness(3, 3, 1, 0)]),
        (fib(4), 7, [StepWitness(7, 3, 1, 3)]),
        (fib(4), 8, []),
        (fib(2, 2), 7, [StepWitness(7, 3, 2, 3)]),
        (fib(11), 11, [StepWitness(11, 5, 1, 8)]),
        (WalkConfig(SILVER, 8, 1), 1, [StepWitness(1, 2, 1, 0)]),
        (WalkConfig(PELL, 14, 1), 6, [StepWitness(6, 3, 1, 5)]),
    ])
    def test_examples(self, cfg, m, expected):
        assert enumerate_steps_from(cfg, m) == expected

    def test_boundary_step_from_repeated_one(self):
        assert StepWitness(2, 1, 1, 0) in enumerate_steps_from(fib(2), 2)

    def test_from_zero_never_lands_on_zero(self):
        steps = enumerate_steps_from(fib(10), 0)
        assert [w.target for w in steps] == [1, 2, 3, 4, 5, 6]
        assert all(w.k >= 1 for w in steps)

    def test_sorted_by_t_then_k(self):
        steps = enumerate_steps_from(fib(10, 2), 0)
        assert steps == sorted(steps, key=lambda w: (w.t, w.k))
        assert {w.t for w in steps} == {1, 2}

    def test_every_enumerated_step_validates(self):
        cfg = fib(7, 2)
        for m in range(40):
            for w in enumerate_steps_from(cfg, m):
                assert validate_step(cfg, w)

    @pytest.mark.parametrize("cfg", [fib(2), fib(4), fib(10), fib(3, 2), WalkConfig(PELL, 2, 1),
                                     WalkConfig(SILVER, 8, 1)])
    def test_agrees_with_digit_oracle(self, cfg):
        for m in range(30):
            assert enumerate_steps_from(cfg, m) == enumerate_steps_by_digits(cfg, m)

    def test_negative_index(self):
        with pytest.raises(DomainError):
            enumerate_steps_from(fib(10), -1)


class TestValidateStep:
    def test_valid(self):
        assert validate_step(fib(10), StepWitness(2, 5, 1, 3))

    @pytest.mark.parametrize("witness", [
        StepWitness(2, 5, 1, 4),
        StepWitness(2, 5, 2, 3),
        StepWitness(2, 5, 1, 13),
        StepWitness(2, 0, 1, 0),
        StepWitness(-1, 1, 1, 0),
    ])
    def test_invalid(self, witness):
        assert not validate_step(fib(10), witness)


class TestDigits:
    def test_to_digits(self):
        assert to_digits(13, 2) == [1, 1, 0, 1]
        assert to_digits(0, 10) == [0]
        assert to_digits(987, 10) == [9, 8, 7]

    def test_from_digits(self):
        assert from_digits([1, 1, 0, 1], 2) == 13
        assert from_digits([8, 1, 8], 11) == 987
        assert from_digits([], 10) == 0

    def test_negative(self):
        with pytest.raises(DomainError):
            to_digits(-5, 10)


class TestRigidity:
    @pytest.mark.parametrize("cfg, expected", [
        (fib(4), [RigiditySolution(3, 1)]),
        (fib(10, 4), []),
        (fib(2, 2), [RigiditySolution(3, 2)]),
        (fib(11), [RigiditySolution(5, 1)]),
        (WalkConfig(PELL, 14, 1), [RigiditySolution(3, 1)]),
        (WalkConfig(PELL, 2, 1), [RigiditySolution(1, 1)]),
    ])
    def test_solutions(self, cfg, expected):
        assert rigidity_solutions(cfg) == expected

    def test_predicted_steps_below_threshold(self):
        cfg = fib(4)
        assert predicted_large_m_steps(cfg, 7, enforce_threshold=False) == [StepWitness(7, 3, 1, 3)]
        # F_5 = 5 >= 4 blocks the remainder
        assert predicted_large_m_steps(cfg, 8, enforce_threshold=False) == []

    def test_predicted_steps_enforce_threshold(self):
        with pytest.raises(DomainError):
            predicted_large_m_steps(fib(4), 7)

    @pytest.mark.parametrize("cfg", [fib(4), fib(10), fib(11), fib(2, 2), WalkConfig(PELL, 14, 1)])
    def test_prediction_matches_enumeration_from_m_star(self, cfg):
        first = m_star(cfg)
        for m in range(first, first + 30):
            assert predicted_large_m_steps(cfg, m) == enumerate_steps_from(cfg, m)

    def test_q_equals_one_predicts_nothing(self):
        assert predicted_large_m_steps(WalkConfig(SILVER, 8, 1), 6) == []

    def test_rigid_remainder(self):
        cfg = fib(11)
        w = enumerate_steps_from(cfg, 11)[0]
        assert w.r == term(FIBONACCI, w.m - w.k)
