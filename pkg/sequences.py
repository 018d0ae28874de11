#!/usr/bin/env python3

"""
Lucas Sequences - exact generation, indexing and identities
-----------------------------------------------------------
Arbitrary-precision Lucas sequences of the first kind U_n(P, Q) and the
second kind V_n(P, Q), with Fibonacci as (P, Q) = (1, -1) and Pell as (2, -1).

Everything here is integer arithmetic. Powers of the dominant root
rho = (P + sqrt(D)) / 2 are never evaluated in floating point: they are
compared against integers through rho^j = (V_j + U_j sqrt(D)) / 2 and a
sign test on a + b*sqrt(D).
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from config_loader import get_config
from errors import DomainError, ParameterError, ResourceLimitError

logger = logging.getLogger(__name__)


# ========================================================================
# === PARAMETERS ===
# ========================================================================

@dataclass(frozen=True)
class SequenceParams:
    """Recurrence coefficients (P, Q) of U_{n+1} = P U_n - Q U_{n-1}."""
    P: int
    Q: int

    def __post_init__(self):
        if abs(self.Q) != 1:
            raise ParameterError(f"Q = {self.Q} violates |Q| = 1", "|Q| = 1")
        if self.discriminant <= 0:
            raise ParameterError(
                f"P^2 - 4Q = {self.discriminant} violates P^2 - 4Q > 0", "P^2 - 4Q > 0"
            )
        if self.Q == -1 and self.P < 1:
            raise ParameterError(f"P = {self.P} violates P >= 1 when Q = -1", "P >= 1 when Q = -1")
        if self.Q == 1 and self.P < 3:
            raise ParameterError(f"P = {self.P} violates P >= 3 when Q = 1", "P >= 3 when Q = 1")
        root = math.isqrt(self.discriminant)
        if root * root == self.discriminant:
            raise ParameterError(
                f"discriminant {self.discriminant} is a perfect square",
                "discriminant is not a perfect square",
            )

    @property
    def discriminant(self) -> int:
        return self.P * self.P - 4 * self.Q

    @property
    def is_fibonacci(self) -> bool:
        return self.P == 1 and self.Q == -1

    @classmethod
    def parse(cls, text: str) -> "SequenceParams":
        """Parse "P,Q" (e.g. "1,-1")."""
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 2:
            raise ParameterError(f"expected 'P,Q', got {text!r}", "params parseable as P,Q")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParameterError(f"expected integers 'P,Q', got {text!r}", "params parseable as P,Q")
        return cls(p, q)

    def __str__(self) -> str:
        return f"{self.P},{self.Q}"


FIBONACCI = SequenceParams(1, -1)
PELL = SequenceParams(2, -1)


# ========================================================================
# === TERMS ===
# ========================================================================

def check_index(n: int) -> int:
    """Reject negative indices and indices above the configured ceiling."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"index must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"index must be nonnegative, got {n}")
    ceiling = get_config().max_index
    if n > ceiling:
        raise ResourceLimitError(n, ceiling)
    return n


def lucas_pair(params: SequenceParams, n: int) -> Tuple[int, int]:
    """Return (U_n, V_n) by fast doubling.

    Uses U_2j = U_j V_j, V_2j = V_j^2 - 2Q^j and the increments
    U_{j+1} = (P U_j + V_j) / 2, V_{j+1} = (D U_j + P V_j) / 2.
    """
    check_index(n)
    P, Q, D = params.P, params.Q, params.discriminant
    u, v, q_pow = 0, 2, 1
    for bit in format(n, "b") if n else "":
        u, v, q_pow = u * v, v * v - 2 * q_pow, q_pow * q_pow
        if bit == "1":
            u, v, q_pow = (P * u + v) // 2, (D * u + P * v) // 2, q_pow * Q
    return u, v


def term(params: SequenceParams, n: int) -> int:
    """U_n(P, Q)."""
    return lucas_pair(params, n)[0]


def companion_term(params: SequenceParams, n: int) -> int:
    """V_n(P, Q)."""
    return lucas_pair(params, n)[1]


def terms(params: SequenceParams) -> Iterator[int]:
    """Yield U_0, U_1, ... by the linear recurrence."""
    a, b = 0, 1
    while True:
        yield a
        a, b = b, params.P * b - params.Q * a


def companion_terms(params: SequenceParams) -> Iterator[int]:
    """Yield V_0, V_1, ... by the linear recurrence."""
    a, b = 2, params.P
    while True:
        yield a
        a, b = b, params.P * b - params.Q * a


# ========================================================================
# === MEMBERSHIP ===
# ========================================================================

def tail_start(params: SequenceParams) -> int:
    """First index from which U_n is strictly increasing.

    Fibonacci repeats the value 1 at indices 1 and 2; every other admitted
    parameter set is strictly increasing from index 0.
    """
    return 2 if params.is_fibonacci else 0


def first_index_at_least(params: SequenceParams, c: int) -> int:
    """Smallest tail index n with U_n >= c.

    The search never evaluates an index above limits.max_index; it raises
    ResourceLimitError only when U at that ceiling is still below c.
    """
    lo = tail_start(params)
    if term(params, lo) >= c:
        return lo
    ceiling = get_config().max_index
    step = 1
    hi = min(lo + step, ceiling)
    while term(params, hi) < c:
        if hi == ceiling:
            raise ResourceLimitError(ceiling + 1, ceiling)
        lo = hi
        step *= 2
        hi = min(lo + step, ceiling)
    # term(lo) < c <= term(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if term(params, mid) >= c:
            hi = mid
        else:
            lo = mid
    return hi


def members_in_range(params: SequenceParams, lo: int, hi: int) -> List[Tuple[int, int]]:
    """All (n, U_n) with lo <= U_n <= hi, ordered by index.

    Indices above limits.max_index are never reported.
    """
    if hi < lo:
        return []
    start = tail_start(params)
    found = [(n, value) for n, value in zip(range(start), terms(params)) if lo <= value <= hi]

    ceiling = get_config().max_index
    n = first_index_at_least(params, lo)
    u, u_prev = term(params, n), None
    while u <= hi:
        found.append((n, u))
        if n >= ceiling:
            break
        u_prev, u = u, term(params, n + 1) if u_prev is None else params.P * u - params.Q * u_prev
        n += 1
    return found


def index_of_value(params: SequenceParams, v: int) -> Optional[int]:
    """Smallest n with U_n = v, or None when v is not a member."""
    if v < 0:
        raise DomainError(f"value must be nonnegative, got {v}")
    hits = members_in_range(params, v, v)
    return hits[0][0] if hits else None


def nearest_members(params: SequenceParams, v: int) -> List[int]:
    """The largest member below v and the smallest member above v.

    A neighbour beyond limits.max_index is left out.
    """
    nearest = []
    try:
        n = first_index_at_least(params, v)
    except ResourceLimitError:
        n = get_config().max_index + 1
    for below in range(n - 1, -1, -1):
        value = term(params, below)
        if value < v:
            nearest.append(value)
            break
    try:
        above = first_index_at_least(params, v + 1)
    except ResourceLimitError:
        return nearest
    nearest.append(term(params, above))
    return nearest


# ========================================================================
# === EXACT ROOT-POWER COMPARISONS ===
# ========================================================================

def sign_quadratic(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for a positive non-square d."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs, and a^2 == b^2 d is impossible for non-square d
    if a > 0:
        return 1 if a * a > b * b * d else -1
    return 1 if b * b * d > a * a else -1


def rho_power_sign(params: SequenceParams, j: int, c: int) -> int:
    """Sign of rho^j - c, decided exactly for any integer j.

    rho^j = (V_j + U_j sqrt(D)) / 2 and, since rho * sigma = Q with |Q| = 1,
    rho^-j = Q^j (V_j - U_j sqrt(D)) / 2.
    """
    n = abs(j)
    u, v = lucas_pair(params, n)
    if j >= 0:
        a, b = v, u
    else:
        s = params.Q ** n
        a, b = s * v, -s * u
    return sign_quadratic(a - 2 * c, b, params.discriminant)


def ceil_log_rho(params: SequenceParams, c: int) -> int:
    """Exact ceil(log_rho c) for an integer c >= 1."""
    if c < 1:
        raise DomainError(f"ceil_log_rho needs c >= 1, got {c}")
    j = 0
    while rho_power_sign(params, j, c) < 0:
        j += 1
    return j


# ========================================================================
# === IDENTITIES ===
# ========================================================================

def verify_growth_bounds(n: int) -> bool:
    """phi^(n-2) <= F_n <= phi^(n-1), decided exactly."""
    if n < 1:
        raise DomainError(f"growth bounds are stated for n >= 1, got {n}")
    f = term(FIBONACCI, n)
    return rho_power_sign(FIBONACCI, n - 2, f) <= 0 and rho_power_sign(FIBONACCI, n - 1, f) >= 0


def addition_formula(params: SequenceParams, m: int, k: int) -> int:
    """U_m V_k - Q^k U_{m-k}, which equals U_{m+k}."""
    check_index(m)
    check_index(k)
    if m < k:
        raise DomainError(f"addition formula needs m >= k, got m={m}, k={k}")
    u_m = term(params, m)
    v_k = companion_term(params, k)
    return u_m * v_k - params.Q ** k * term(params, m - k)


def fibonacci_jump_formula(m: int, k: int) -> int:
    """(F_{k+2} - F_{k-2}) F_m + (-1)^(k+1) F_{m-k} for m >= k >= 2."""
    if not (m >= k >= 2):
        raise DomainError(f"jump formula needs m >= k >= 2, got m={m}, k={k}")
    coefficient = term(FIBONACCI, k + 2) - term(FIBONACCI, k - 2)
    return coefficient * term(FIBONACCI, m) + (-1) ** (k + 1) * term(FIBONACCI, m - k)


def product_comparability_check(m: int, k: int) -> bool:
    """F_{k+1} F_m <= F_{m+k} <= F_{k+2} F_m."""
    if m < 1 or k < 1:
        raise DomainError(f"product comparability needs m >= 1 and k >= 1, got m={m}, k={k}")
    f_m = term(FIBONACCI, m)
    f_mk = term(FIBONACCI, m + k)
    return term(FIBONACCI, k + 1) * f_m <= f_mk <= term(FIBONACCI, k + 2) * f_m
