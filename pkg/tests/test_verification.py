"""Tests for the verification suites, on small grids and on the full acceptance grids."""
import pytest

from errors import DomainError
from sequences import FIBONACCI, PELL, SequenceParams
from stepper import WalkConfig
from verification import (
    ACCEPTANCE_GRID,
    FIBONACCI_GRID,
    LUCAS_GRID,
    SUITES,
    SuiteResult,
    certificates_suite,
    differential_suite,
    growth_suite,
    identities_suite,
    rigidity_suite,
    run_suites,
    theorem_suite,
)

SMALL_GRID = (
    WalkConfig(FIBONACCI, 2, 1),
    WalkConfig(FIBONACCI, 4, 1),
    WalkConfig(FIBONACCI, 10, 1),
    WalkConfig(PELL, 14, 1),
    WalkConfig(SequenceParams(3, 1), 8, 1),
)


def test_identities_pass():
    result = identities_suite(max_m=30, max_n=100)
    assert result.name == "identities"
    assert result.passed
    assert result.counterexample is None
    assert result.checked > 0


def test_identities_respect_max_k():
    narrow = identities_suite(max_m=20, max_k=2, max_n=40)
    wide = identities_suite(max_m=20, max_n=40)
    assert narrow.passed and wide.passed
    assert narrow.checked < wide.checked


def test_growth_pass():
    result = growth_suite(200)
    assert result.passed
    assert result.checked == 200


def test_differential_pass():
    result = differential_suite(SMALL_GRID, extra=10)
    assert result.passed, result.counterexample


def test_rigidity_pass():
    result = rigidity_suite(SMALL_GRID, window=15)
    assert result.passed, result.counterexample


def test_theorem_pass():
    result = theorem_suite(SMALL_GRID)
    assert result.passed, result.counterexample


def test_certificates_pass():
    result = certificates_suite(SMALL_GRID, scan_margin=10)
    assert result.passed, result.counterexample


def test_failure_reports_counterexample(monkeypatch):
    import verification

    monkeypatch.setattr(verification, "verify_growth_bounds", lambda n: n != 7)
    result = growth_suite(20)
    assert not result.passed
    assert result.checked == 7
    assert result.counterexample == {"identity": "phi growth bounds", "n": "7"}


def test_run_single_suite():
    results = run_suites("growth", max_m=30)
    assert [r.name for r in results] == ["growth"]
    assert isinstance(results[0], SuiteResult)


def test_run_restricted_grid():
    results = run_suites("differential", cfgs=[WalkConfig(FIBONACCI, 4, 1)])
    assert results[0].passed


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suites("bogus")


def test_suite_names():
    assert SUITES == ("identities", "growth", "differential", "rigidity", "theorem", "certificates")


def test_fibonacci_grid_shape():
    assert len(FIBONACCI_GRID) == 15 * 4
    assert {cfg.base for cfg in FIBONACCI_GRID} == set(range(2, 17))


def test_acceptance_grid_shape():
    assert ACCEPTANCE_GRID == FIBONACCI_GRID + LUCAS_GRID
    assert len(LUCAS_GRID) == 12
    assert {cfg.params for cfg in LUCAS_GRID} == {PELL, SequenceParams(3, 1)}


@pytest.mark.slow
class TestAcceptanceGrids:
    """Every suite at its default size and grid."""

    def test_identities(self):
        result = identities_suite()
        assert result.passed, result.counterexample
        assert result.checked == 107105

    def test_growth(self):
        result = growth_suite()
        assert result.passed, result.counterexample
        assert result.checked == 500

    def test_theorem(self):
        result = theorem_suite()
        assert result.passed, result.counterexample
        assert result.checked == 5 * len(FIBONACCI_GRID)

    def test_rigidity(self):
        result = rigidity_suite()
        assert result.passed, result.counterexample

    def test_certificates(self):
        result = certificates_suite()
        assert result.passed, result.counterexample
        assert result.checked == len(ACCEPTANCE_GRID)

    def test_differential(self):
        result = differential_suite()
        assert result.passed, result.counterexample
