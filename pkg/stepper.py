#!/usr/bin/env python3

"""
Digit-Appending Steps
---------------------
A step from U_m appends t base-b digits (value r, leading zeros allowed):

    U_{m+k} = b^t * U_m + r,   1 <= t <= N,  0 <= r < b^t,  k >= 1.

Steps are found by searching each value interval [b^t U_m, b^t U_m + b^t - 1]
for sequence members. The literal digit-concatenation search is kept only as
an oracle for differential testing.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

from errors import DomainError, LucasWalkError, ParameterError
from sequences import (
    SequenceParams,
    FIBONACCI,
    check_index,
    companion_term,
    members_in_range,
    term,
    terms,
)

logger = logging.getLogger(__name__)


# ========================================================================
# === DOMAIN TYPES ===
# ========================================================================

@dataclass(frozen=True)
class WalkConfig:
    """Carrier sequence, base b and digit budget N."""
    params: SequenceParams = FIBONACCI
    base: int = 10
    digits: int = 1

    def __post_init__(self):
        if self.base < 2:
            raise ParameterError(f"base {self.base} violates b >= 2", "b >= 2")
        if self.digits < 1:
            raise ParameterError(f"digit budget {self.digits} violates N >= 1", "N >= 1")

    @property
    def capacity(self) -> int:
        """b^N."""
        return self.base ** self.digits


@dataclass(frozen=True, order=True)
class StepWitness:
    """One step U_m -> U_{m+k} appending t digits of value r."""
    m: int
    k: int
    t: int
    r: int

    @property
    def target(self) -> int:
        return self.m + self.k


@dataclass(frozen=True, order=True)
class RigiditySolution:
    """A jump k with V_k = b^t exactly."""
    k: int
    t: int


StepSource = Callable[[WalkConfig, int], List[StepWitness]]


# ========================================================================
# === ENUMERATION ===
# ========================================================================

def enumerate_steps_from(cfg: WalkConfig, m: int) -> List[StepWitness]:
    """Every valid step with source index m, sorted by (t, k)."""
    check_index(m)
    u = term(cfg.params, m)
    witnesses = []
    for t in range(1, cfg.digits + 1):
        scale = cfg.base ** t
        lo = scale * u
        for n, value in members_in_range(cfg.params, lo, lo + scale - 1):
            k = n - m
            if k >= 1 and value != u:
                witnesses.append(StepWitness(m, k, t, value - lo))
    witnesses.sort(key=lambda w: (w.t, w.k))
    logger.debug(f"{len(witnesses)} steps from index {m} ({cfg})")
    return witnesses


def validate_step(cfg: WalkConfig, w: StepWitness) -> bool:
    """True iff w is a genuine step under cfg."""
    if w.m < 0 or w.k < 1 or not (1 <= w.t <= cfg.digits):
        return False
    scale = cfg.base ** w.t
    if not (0 <= w.r < scale):
        return False
    try:
        source = term(cfg.params, w.m)
        target = term(cfg.params, w.m + w.k)
    except LucasWalkError:
        return False
    return target == scale * source + w.r and target != source


# ========================================================================
# === DIGIT-STRING ORACLE ===
# ========================================================================

def to_digits(value: int, base: int) -> List[int]:
    """Base-b digits of value, most significant first ([0] for zero)."""
    if value < 0:
        raise DomainError(f"cannot convert negative value {value}")
    digits = []
    while True:
        value, digit = divmod(value, base)
        digits.append(digit)
        if value == 0:
            break
    return digits[::-1]


def from_digits(digits: Sequence[int], base: int) -> int:
    value = 0
    for digit in digits:
        value = value * base + digit
    return value


def enumerate_steps_by_digits(cfg: WalkConfig, m: int) -> List[StepWitness]:
    """Every step from index m found by literally appending digit blocks.

    Exponential in N; used only to cross-check enumerate_steps_from.
    """
    check_index(m)
    source = term(cfg.params, m)
    prefix = to_digits(source, cfg.base)
    ceiling = source * cfg.capacity + cfg.capacity

    index_by_value: Dict[int, List[int]] = {}
    for n, value in enumerate(terms(cfg.params)):
        if value > ceiling and n >= 2:
            break
        index_by_value.setdefault(value, []).append(n)

    witnesses = []
    for t in range(1, cfg.digits + 1):
        for block in itertools.product(range(cfg.base), repeat=t):
            value = from_digits(prefix + list(block), cfg.base)
            if value == source:
                continue
            for n in index_by_value.get(value, []):
                if n > m:
                    witnesses.append(StepWitness(m, n - m, t, from_digits(block, cfg.base)))
    witnesses.sort(key=lambda w: (w.t, w.k))
    return witnesses


# ========================================================================
# === RIGIDITY ===
# ========================================================================

def rigidity_solutions(cfg: WalkConfig) -> List[RigiditySolution]:
    """All (k, t) with k up to the exact jump bound and V_k = b^t.

    For Q = -1 only odd k survive (the remainder U_{m-k} must be nonnegative);
    for Q = 1 every solution is kept since each forces r = -U_{m-k} < 0.
    """
    from bounds import jump_bound_exact

    powers = {cfg.base ** t: t for t in range(1, cfg.digits + 1)}
    solutions = []
    for k in range(1, jump_bound_exact(cfg) + 1):
        t = powers.get(companion_term(cfg.params, k))
        if t is None:
            continue
        if cfg.params.Q == -1 and k % 2 == 0:
            continue
        solutions.append(RigiditySolution(k, t))
    return sorted(solutions, key=lambda s: (s.t, s.k))


def predicted_large_m_steps(cfg: WalkConfig, m: int, enforce_threshold: bool = True) -> List[StepWitness]:
    """Steps from m predicted by rigidity alone: (m, k, t, U_{m-k}) when U_{m-k} < b^t.

    Only exhaustive for m >= m_star; pass enforce_threshold=False to evaluate
    the prediction below that threshold.
    """
    from bounds import m_star

    check_index(m)
    if enforce_threshold:
        threshold = m_star(cfg)
        if m < threshold:
            raise DomainError(f"rigidity applies from m_star = {threshold}, got m = {m}")
    if cfg.params.Q == 1:
        return []
    predicted = []
    for solution in rigidity_solutions(cfg):
        if solution.k >= m:
            continue
        r = term(cfg.params, m - solution.k)
        if r < cfg.base ** solution.t:
            predicted.append(StepWitness(m, solution.k, solution.t, r))
    predicted.sort(key=lambda w: (w.t, w.k))
    return predicted
