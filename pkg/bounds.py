#!/usr/bin/env python3

"""
Walk-Length Bounds
------------------
Exact thresholds for digit-appending walks:

- n_star: largest index whose value fits in N base-b digits minus one
- k_log_bound: ceil(1 + log_phi(2 b^N)) (Fibonacci only)
- jump_bound_exact: largest jump a step can make from m > k
- m_star: index from which every step is rigid
- certificate_threshold: no step exists from any index at or above it

The closed form 2N log_phi b + log_phi 2 + 4 is evaluated with mpmath for
reporting only; it never gates exact logic.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import mpmath

from config_loader import get_config
from errors import DomainError
from sequences import (
    FIBONACCI,
    SequenceParams,
    ceil_log_rho,
    companion_term,
    first_index_at_least,
    tail_start,
    term,
)
from stepper import WalkConfig

logger = logging.getLogger(__name__)

CLOSED_FORM_PRECISION = "1e-6"
CLOSED_FORM_TOLERANCE = mpmath.mpf("1e-6")


@dataclass(frozen=True)
class BoundReport:
    """All bound quantities for one (params, b, N) instance plus the measured L_max."""
    cfg: WalkConfig
    n_star: int
    k_log_bound: Optional[int]
    k_exact: int
    m_star: int
    threshold: int
    theorem_bound: int
    closed_form: Optional[str]
    log_rho_base: str
    chain_holds: Optional[bool]
    l_max: int
    l_max_nodes: int
    satisfied: bool
    closed_form_precision: str = CLOSED_FORM_PRECISION
    evaluation_method: str = "mpmath, 64 significant digits"


# ========================================================================
# === EXACT THRESHOLDS ===
# ========================================================================

def n_star(cfg: WalkConfig) -> int:
    """max{n >= 0 : U_n <= b^N - 1}, taking the largest index on ties."""
    return first_index_at_least(cfg.params, cfg.capacity) - 1


def k_log_bound(cfg: WalkConfig) -> int:
    """ceil(1 + log_phi(2 b^N)), evaluated exactly."""
    if not cfg.params.is_fibonacci:
        raise DomainError(f"k_log_bound is defined for Fibonacci parameters only, got ({cfg.params})")
    return 1 + ceil_log_rho(FIBONACCI, 2 * cfg.capacity)


def jump_bound_exact(cfg: WalkConfig) -> int:
    """Largest jump k any step from m > k can make (0 if none).

    Fibonacci: max{k : F_{k+1} < 2b^N}. Otherwise U_{m+k} >= U_m (V_k - 1)
    gives max{k : V_k <= 2b^N}.
    """
    limit = 2 * cfg.capacity
    if cfg.params.is_fibonacci:
        return first_index_at_least(FIBONACCI, limit) - 2
    k = 0
    while companion_term(cfg.params, k + 1) <= limit:
        k += 1
    return k


def m_star(cfg: WalkConfig) -> int:
    """Index from which every step satisfies the rigidity conditions."""
    if cfg.params.is_fibonacci:
        return ceil_log_rho(FIBONACCI, 2 * cfg.capacity) + 4

    params, cap = cfg.params, cfg.capacity
    m = max(2, tail_start(params))
    while True:
        u_m = term(params, m)
        conditions = (
            term(params, m - 2) > cap,
            u_m > 0,
            params.Q != 1 or u_m - term(params, m - 1) > cap,
            companion_term(params, m) > 2 * cap + 1,
        )
        if all(conditions):
            return m
        m += 1


def certificate_threshold(cfg: WalkConfig) -> int:
    """max(m_star, n_star + K_exact + 1)."""
    return max(m_star(cfg), n_star(cfg) + jump_bound_exact(cfg) + 1)


# ========================================================================
# === CLOSED FORMS ===
# ========================================================================

def log_rho(params: SequenceParams, x, dps: Optional[int] = None) -> mpmath.mpf:
    """log base rho of x at the configured working precision."""
    with mpmath.workdps(dps or get_config().dps):
        rho = (params.P + mpmath.sqrt(params.discriminant)) / 2
        return mpmath.log(x) / mpmath.log(rho)


def closed_form_value(cfg: WalkConfig, dps: Optional[int] = None) -> mpmath.mpf:
    """2N log_phi b + log_phi 2 + 4."""
    if not cfg.params.is_fibonacci:
        raise DomainError("the closed form is stated for Fibonacci parameters only")
    with mpmath.workdps(dps or get_config().dps):
        return 2 * cfg.digits * log_rho(FIBONACCI, cfg.base, dps) + log_rho(FIBONACCI, 2, dps) + 4


def format_decimal(value: mpmath.mpf) -> str:
    return mpmath.nstr(value, 18)


def chain_holds(cfg: WalkConfig) -> bool:
    """n_* <= 2 + N log_phi b and K <= 2 + N log_phi b + log_phi 2."""
    scale = cfg.digits * log_rho(FIBONACCI, cfg.base)
    return (
        n_star(cfg) <= 2 + scale + CLOSED_FORM_TOLERANCE
        and k_log_bound(cfg) <= 2 + scale + log_rho(FIBONACCI, 2) + CLOSED_FORM_TOLERANCE
    )


# ========================================================================
# === REPORT ===
# ========================================================================

def bound_report(cfg: WalkConfig, l_max: Optional[int] = None) -> BoundReport:
    """Assemble every bound quantity; l_max is measured by the walker when omitted."""
    if l_max is None:
        from walker import longest_walk
        l_max = longest_walk(cfg)[0]

    threshold = certificate_threshold(cfg)
    fibonacci = cfg.params.is_fibonacci
    jump = k_log_bound(cfg) if fibonacci else None
    stars = n_star(cfg)
    theorem_bound = stars + jump if fibonacci else threshold

    report = BoundReport(
        cfg=cfg,
        n_star=stars,
        k_log_bound=jump,
        k_exact=jump_bound_exact(cfg),
        m_star=m_star(cfg),
        threshold=threshold,
        theorem_bound=theorem_bound,
        closed_form=format_decimal(closed_form_value(cfg)) if fibonacci else None,
        log_rho_base=format_decimal(cfg.digits * log_rho(cfg.params, cfg.base)),
        chain_holds=chain_holds(cfg) if fibonacci else None,
        l_max=l_max,
        l_max_nodes=l_max + 1,
        satisfied=l_max <= theorem_bound,
        evaluation_method=f"mpmath, {get_config().dps} significant digits",
    )
    if not report.satisfied:
        logger.error(f"L_max {l_max} exceeds the theorem bound {theorem_bound} for {cfg}")
    else:
        logger.info(f"Bound report for {cfg}: L_max={l_max} <= {theorem_bound}")
    return report
