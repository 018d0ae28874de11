#!/usr/bin/env python3

"""
Verification Suites
===================

Exhaustive, exact checks of the identities, growth bounds, step enumeration
and termination results. Each suite stops at the first counterexample and
reports how many individual checks it ran.

Suites:
- identities: product comparability, jump formula, addition formula,
  fast doubling against the linear recurrence
- growth: phi^(n-2) <= F_n <= phi^(n-1)
- differential: interval enumeration against the digit-string oracle
- rigidity: predicted large-m steps against enumeration
- theorem: L_max <= n_* + K <= closed form over a grid
- certificates: certify_termination plus independent re-check
"""

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional

from bounds import (
    CLOSED_FORM_TOLERANCE,
    bound_report,
    closed_form_value,
    jump_bound_exact,
    m_star,
    n_star,
)
from errors import DomainError, LucasWalkError
from sequences import (
    FIBONACCI,
    PELL,
    SequenceParams,
    addition_formula,
    companion_term,
    companion_terms,
    fibonacci_jump_formula,
    lucas_pair,
    product_comparability_check,
    term,
    terms,
    verify_growth_bounds,
)
from stepper import (
    WalkConfig,
    enumerate_steps_by_digits,
    enumerate_steps_from,
    predicted_large_m_steps,
    validate_step,
)
from walker import certify_termination, check_certificate, longest_walk

logger = logging.getLogger(__name__)

IDENTITY_PARAMS = (FIBONACCI, PELL, SequenceParams(3, 1))

FIBONACCI_GRID = tuple(
    WalkConfig(FIBONACCI, b, n) for b in range(2, 17) for n in range(1, 5)
)
LUCAS_GRID = tuple(
    [WalkConfig(PELL, b, n) for b in (2, 10, 14) for n in (1, 2)]
    + [WalkConfig(SequenceParams(3, 1), b, n) for b in (2, 8, 10) for n in (1, 2)]
)
ACCEPTANCE_GRID = FIBONACCI_GRID + LUCAS_GRID


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""
    name: str
    passed: bool
    checked: int
    counterexample: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0


class _Counterexample(Exception):
    def __init__(self, payload: Dict[str, Any]):
        super().__init__(str(payload))
        self.payload = payload


class _Checker:
    """Counts checks and raises on the first failure."""

    def __init__(self):
        self.checked = 0

    def require(self, condition: bool, **payload: Any) -> None:
        self.checked += 1
        if not condition:
            raise _Counterexample({key: _jsonable(value) for key, value in payload.items()})


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def _run(name: str, body: Callable[[_Checker], None]) -> SuiteResult:
    checker = _Checker()
    started = time.perf_counter()
    counterexample = None
    try:
        body(checker)
    except _Counterexample as e:
        counterexample = e.payload
    except LucasWalkError as e:
        counterexample = {"error": type(e).__name__, "message": str(e)}
    elapsed = round(time.perf_counter() - started, 3)

    result = SuiteResult(name, counterexample is None, checker.checked, counterexample, elapsed)
    if result.passed:
        logger.info(f"Suite {name} passed: {result.checked} checks in {elapsed}s")
    else:
        logger.error(f"Suite {name} failed after {result.checked} checks: {counterexample}")
    return result


# ========================================================================
# === SUITES ===
# ========================================================================

def identities_suite(
    max_m: int = 200,
    max_k: Optional[int] = None,
    params_grid: Iterable[SequenceParams] = IDENTITY_PARAMS,
    max_n: int = 2000,
) -> SuiteResult:
    max_k = max_m if max_k is None else max_k
    params_grid = tuple(params_grid)

    def body(check: _Checker) -> None:
        for m in range(1, max_m + 1):
            for k in range(1, min(m, max_k) + 1):
                check.require(product_comparability_check(m, k), identity="product comparability", m=m, k=k)
                if k >= 2:
                    check.require(
                        fibonacci_jump_formula(m, k) == term(FIBONACCI, m + k),
                        identity="jump formula", m=m, k=k,
                    )
        for k in range(2, max_m + 1):
            check.require(
                term(FIBONACCI, k + 2) - term(FIBONACCI, k - 2) == companion_term(FIBONACCI, k),
                identity="F_{k+2} - F_{k-2} = L_k", k=k,
            )
        for params in params_grid:
            count = max(max_n, 2 * max_m) + 1
            naive_u = list(itertools.islice(terms(params), count))
            naive_v = list(itertools.islice(companion_terms(params), count))
            for n in range(max_n + 1):
                check.require(
                    lucas_pair(params, n) == (naive_u[n], naive_v[n]),
                    identity="fast doubling", params=str(params), n=n,
                )
            for m in range(max_m + 1):
                for k in range(min(m, max_k) + 1):
                    check.require(
                        addition_formula(params, m, k) == naive_u[m + k],
                        identity="addition formula", params=str(params), m=m, k=k,
                    )

    return _run("identities", body)


def growth_suite(max_m: int = 500) -> SuiteResult:
    def body(check: _Checker) -> None:
        for n in range(1, max_m + 1):
            check.require(verify_growth_bounds(n), identity="phi growth bounds", n=n)

    return _run("growth", body)


def differential_suite(cfgs: Iterable[WalkConfig] = ACCEPTANCE_GRID, extra: int = 50) -> SuiteResult:
    cfgs = tuple(cfgs)

    def body(check: _Checker) -> None:
        for cfg in cfgs:
            last = n_star(cfg) + jump_bound_exact(cfg) + extra
            for m in range(last + 1):
                fast = enumerate_steps_from(cfg, m)
                for w in fast:
                    check.require(validate_step(cfg, w), property="soundness", cfg=cfg, witness=w)
                oracle = enumerate_steps_by_digits(cfg, m)
                check.require(set(fast) == set(oracle), property="completeness", cfg=cfg, m=m,
                              fast=fast, oracle=oracle)
            fast_length = longest_walk(cfg)[0]
            oracle_length = longest_walk(cfg, step_source=enumerate_steps_by_digits)[0]
            check.require(fast_length == oracle_length, property="longest walk", cfg=cfg,
                          fast=fast_length, oracle=oracle_length)

    return _run("differential", body)


def rigidity_suite(cfgs: Iterable[WalkConfig] = ACCEPTANCE_GRID, window: int = 50) -> SuiteResult:
    cfgs = tuple(cfgs)

    def body(check: _Checker) -> None:
        for cfg in cfgs:
            params = cfg.params
            first = m_star(cfg)
            bound = jump_bound_exact(cfg)
            for m in range(0, first + window + 1):
                steps = enumerate_steps_from(cfg, m)
                for w in steps:
                    if w.m > w.k:
                        check.require(w.k <= bound, property="jump bound", cfg=cfg, witness=w)
                    if params.is_fibonacci and m >= 3:
                        check.require(w.k != 1, property="no unit jump", cfg=cfg, witness=w)
                if m < first:
                    continue
                predicted = predicted_large_m_steps(cfg, m)
                check.require(predicted == steps, property="rigidity agreement", cfg=cfg, m=m,
                              predicted=predicted, enumerated=steps)
                if params.Q == -1:
                    for w in steps:
                        check.require(
                            w.k % 2 == 1
                            and companion_term(params, w.k) == cfg.base ** w.t
                            and w.r == term(params, m - w.k),
                            property="rigid structure", cfg=cfg, witness=w,
                        )

    return _run("rigidity", body)


def theorem_suite(cfgs: Iterable[WalkConfig] = FIBONACCI_GRID) -> SuiteResult:
    cfgs = tuple(cfgs)

    def body(check: _Checker) -> None:
        for cfg in cfgs:
            report = bound_report(cfg)
            check.require(report.satisfied, property="L_max <= theorem bound", cfg=cfg,
                          l_max=report.l_max, bound=report.theorem_bound)
            if not cfg.params.is_fibonacci:
                continue
            check.require(
                report.theorem_bound <= closed_form_value(cfg) + CLOSED_FORM_TOLERANCE,
                property="theorem bound <= closed form", cfg=cfg, bound=report.theorem_bound,
                closed_form=report.closed_form,
            )
            check.require(report.n_star >= 2, property="n_star >= 2", cfg=cfg)
            check.require(report.n_star + report.k_log_bound + 1 >= report.m_star,
                          property="n_star + K + 1 >= m_star", cfg=cfg)
            check.require(bool(report.chain_holds), property="closed-form chain", cfg=cfg)

    return _run("theorem", body)


def certificates_suite(cfgs: Iterable[WalkConfig] = ACCEPTANCE_GRID,
                       scan_margin: int = 50) -> SuiteResult:
    cfgs = tuple(cfgs)

    def body(check: _Checker) -> None:
        for cfg in cfgs:
            certificate = certify_termination(cfg, scan_margin)
            check.require(check_certificate(certificate), property="certificate re-check", cfg=cfg)

    return _run("certificates", body)


SUITES = ("identities", "growth", "differential", "rigidity", "theorem", "certificates")


def run_suites(
    suite: str,
    max_m: Optional[int] = None,
    max_k: Optional[int] = None,
    params_grid: Optional[Iterable[SequenceParams]] = None,
    cfgs: Optional[Iterable[WalkConfig]] = None,
    scan_margin: int = 50,
) -> List[SuiteResult]:
    """Run one suite by name, or every suite for "all"."""
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        if name == "identities":
            results.append(identities_suite(max_m or 200, max_k, params_grid or IDENTITY_PARAMS))
        elif name == "growth":
            results.append(growth_suite(max_m or 500))
        elif name == "differential":
            results.append(differential_suite(cfgs or ACCEPTANCE_GRID))
        elif name == "rigidity":
            results.append(rigidity_suite(cfgs or ACCEPTANCE_GRID))
        elif name == "theorem":
            results.append(theorem_suite(cfgs or FIBONACCI_GRID))
        elif name == "certificates":
            results.append(certificates_suite(cfgs or ACCEPTANCE_GRID, scan_margin))
        else:
            raise DomainError(f"unknown suite {name!r}")
    return results
