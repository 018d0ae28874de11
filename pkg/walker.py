#!/usr/bin/env python3

"""
Walks, Step Graphs and Termination Certificates
-----------------------------------------------
Every step raises the index by at least one, so the steps between indices
0 .. threshold + margin form a DAG. Longest walks come from a DP over that
DAG; a termination certificate records the thresholds and rigidity
solutions showing that no step leaves any index at or above the threshold.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from bounds import certificate_threshold, jump_bound_exact, m_star, n_star
from config_loader import get_config
from errors import CertificationError, DomainError, MembershipError
from sequences import (
    SequenceParams,
    FIBONACCI,
    check_index,
    companion_term,
    index_of_value,
    members_in_range,
    nearest_members,
    rho_power_sign,
    term,
)
from stepper import (
    RigiditySolution,
    StepSource,
    StepWitness,
    WalkConfig,
    enumerate_steps_from,
    rigidity_solutions,
    validate_step,
)

logger = logging.getLogger(__name__)

TERMINATES = "TERMINATES"


# ========================================================================
# === DOMAIN TYPES ===
# ========================================================================

@dataclass(frozen=True)
class WalkRecord:
    """A start index and the chain of steps taken from it."""
    start: int
    steps: Tuple[StepWitness, ...] = ()

    @property
    def length(self) -> int:
        """Number of steps (edges)."""
        return len(self.steps)

    @property
    def nodes(self) -> int:
        return len(self.steps) + 1

    def indices(self) -> List[int]:
        return [self.start] + [w.target for w in self.steps]


@dataclass(frozen=True)
class WalkFailure:
    """The first appended block that does not land on a sequence member."""
    block_index: int
    value: int
    reached: WalkRecord


@dataclass(frozen=True)
class TerminationCertificate:
    """Self-contained evidence that no step leaves any index >= threshold."""
    cfg: WalkConfig
    threshold: int
    k_exact: int
    m_star: int
    rigidity_solutions: Tuple[RigiditySolution, ...]
    n_star: int
    scan_margin: int
    conclusion: str = TERMINATES


# ========================================================================
# === STEP GRAPH ===
# ========================================================================

def _resolve_margin(scan_margin: Optional[int]) -> int:
    margin = get_config().scan_margin if scan_margin is None else scan_margin
    if margin < 1:
        raise DomainError(f"scan margin must be >= 1, got {margin}")
    return margin


def build_step_graph(
    cfg: WalkConfig,
    scan_margin: Optional[int] = None,
    step_source: StepSource = enumerate_steps_from,
) -> nx.DiGraph:
    """DAG on indices 0 .. threshold + margin with an edge m -> m + k per step.

    Each edge carries the list of witnesses producing it (several t can
    reach the same target from U_0 = 0).
    """
    last = certificate_threshold(cfg) + _resolve_margin(scan_margin)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(last + 1))
    for m in range(last + 1):
        for w in step_source(cfg, m):
            if graph.has_edge(m, w.target):
                graph.edges[m, w.target]["witnesses"].append(w)
            else:
                graph.add_edge(m, w.target, witnesses=[w])

    if not nx.is_directed_acyclic_graph(graph):
        raise CertificationError("step graph is acyclic")
    logger.info(f"Step graph for {cfg}: {graph.number_of_nodes()} nodes, {graph.number_of_edges()} edges")
    return graph


def _longest_from(graph: nx.DiGraph) -> Tuple[Dict[int, int], Dict[int, Optional[int]]]:
    """Longest walk length from every node and the successor realizing it.

    Among maximal successors the smallest target (smallest jump) wins, which
    makes the reconstructed jump sequence lexicographically smallest.
    """
    best: Dict[int, int] = {}
    choice: Dict[int, Optional[int]] = {}
    for node in reversed(list(nx.topological_sort(graph))):
        best[node], choice[node] = 0, None
        for succ in sorted(graph.successors(node)):
            if best[succ] + 1 > best[node]:
                best[node], choice[node] = best[succ] + 1, succ
    return best, choice


def walk_lengths_by_start(
    cfg: WalkConfig,
    scan_margin: Optional[int] = None,
    step_source: StepSource = enumerate_steps_from,
) -> Dict[int, int]:
    """Longest walk length from each start index."""
    graph = build_step_graph(cfg, scan_margin, step_source)
    best, _ = _longest_from(graph)
    return {node: best[node] for node in sorted(best)}


def longest_walk(
    cfg: WalkConfig,
    scan_margin: Optional[int] = None,
    step_source: StepSource = enumerate_steps_from,
) -> Tuple[int, WalkRecord]:
    """Maximum step count over all starts and a deterministic walk achieving it."""
    graph = build_step_graph(cfg, scan_margin, step_source)
    best, choice = _longest_from(graph)
    length = max(best.values())
    start = min(node for node, value in best.items() if value == length)

    steps = []
    node = start
    while choice[node] is not None:
        succ = choice[node]
        steps.append(min(graph.edges[node, succ]["witnesses"], key=lambda w: w.t))
        node = succ
    return length, WalkRecord(start, tuple(steps))


# ========================================================================
# === WALKS ===
# ========================================================================

def walk_values(params: SequenceParams, walk: WalkRecord) -> List[int]:
    return [term(params, n) for n in walk.indices()]


def validate_walk(cfg: WalkConfig, walk: WalkRecord) -> bool:
    """Chain consistency plus validity of every step."""
    source = walk.start
    for w in walk.steps:
        if w.m != source or not validate_step(cfg, w):
            return False
        source = w.target
    return True


def simulate_walk(
    cfg: WalkConfig, start: int, appended_blocks: Sequence[Tuple[int, int]]
) -> Union[WalkRecord, WalkFailure]:
    """Append the (t, r) blocks in order starting from U_start."""
    check_index(start)
    for i, (t, r) in enumerate(appended_blocks):
        if not (1 <= t <= cfg.digits) or not (0 <= r < cfg.base ** t):
            raise DomainError(
                f"block {i} ({t}:{r}) needs 1 <= t <= {cfg.digits} and 0 <= r < {cfg.base}^t"
            )

    index, value = start, term(cfg.params, start)
    steps: List[StepWitness] = []
    for i, (t, r) in enumerate(appended_blocks):
        appended = cfg.base ** t * value + r
        targets = [n for n, _ in members_in_range(cfg.params, appended, appended) if n > index]
        if not targets or appended == value:
            logger.info(f"Walk from index {start} fails at block {i}: {appended} is not reachable")
            return WalkFailure(i, appended, WalkRecord(start, tuple(steps)))
        steps.append(StepWitness(index, targets[0] - index, t, r))
        index, value = targets[0], appended
    return WalkRecord(start, tuple(steps))


def parse_blocks(text: str) -> List[Tuple[int, int]]:
    """Parse "t:r,t:r,..." into (t, r) pairs."""
    blocks = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        t, sep, r = item.partition(":")
        try:
            if not sep:
                raise ValueError(item)
            blocks.append((int(t), int(r)))
        except ValueError:
            raise DomainError(f"malformed block {item!r}, expected t:r")
    if not blocks:
        raise DomainError("at least one t:r block is required")
    return blocks


def start_index_for_value(params: SequenceParams, value: int) -> int:
    """Index of a starting value; MembershipError names the neighbouring members."""
    index = index_of_value(params, value)
    if index is None:
        raise MembershipError(value, nearest_members(params, value))
    return index


def steps_in_window(
    cfg: WalkConfig,
    from_index: Optional[int] = None,
    scan_margin: Optional[int] = None,
) -> List[StepWitness]:
    """Witnesses from one index, or from every index up to threshold + margin.

    Sorted by (m, t, k).
    """
    if from_index is not None:
        check_index(from_index)
        indices = [from_index]
    else:
        indices = range(certificate_threshold(cfg) + _resolve_margin(scan_margin) + 1)
    witnesses = [w for m in indices for w in enumerate_steps_from(cfg, m)]
    return sorted(witnesses, key=lambda w: (w.m, w.t, w.k))


# ========================================================================
# === CERTIFICATES ===
# ========================================================================

def _scan_for_steps(cfg: WalkConfig, first: int, margin: int) -> Optional[StepWitness]:
    for m in range(first, first + margin + 1):
        steps = enumerate_steps_from(cfg, m)
        if steps:
            return steps[0]
    return None


def _forced_remainder_negative(params: SequenceParams, threshold: int, solution: RigiditySolution) -> bool:
    """For Q = 1 a rigid step from m needs r = -U_{m-k}; U is increasing, so m = threshold is the worst case."""
    return solution.k < threshold and term(params, threshold - solution.k) > 0


def certify_termination(cfg: WalkConfig, scan_margin: Optional[int] = None) -> TerminationCertificate:
    """Compute and check a termination certificate for cfg."""
    margin = _resolve_margin(scan_margin)
    params, cap = cfg.params, cfg.capacity
    stars = n_star(cfg)
    k_exact = jump_bound_exact(cfg)
    rigid_from = m_star(cfg)
    solutions = tuple(rigidity_solutions(cfg))
    threshold = max(rigid_from, stars + k_exact + 1)

    if term(params, stars + 1) < cap:
        raise CertificationError("U_{n_star+1} >= b^N")
    if threshold <= k_exact:
        raise CertificationError("threshold > K_exact")
    for solution in solutions:
        if companion_term(params, solution.k) != cfg.base ** solution.t:
            raise CertificationError("V_k = b^t for every rigidity solution", solution)
        if params.Q == -1:
            if solution.k % 2 == 0:
                raise CertificationError("k odd for every rigidity solution", solution)
            # r = U_{m-k} is smallest at m = threshold
            if term(params, threshold - solution.k) < cfg.base ** solution.t:
                raise CertificationError("U_{threshold-k} >= b^t for every rigidity solution", solution)
        elif not _forced_remainder_negative(params, threshold, solution):
            raise CertificationError("r = -U_{m-k} < 0 for every rigidity solution when Q = 1", solution)

    witness = _scan_for_steps(cfg, threshold, margin)
    if witness is not None:
        raise CertificationError("no step from any m >= threshold", witness)

    certificate = TerminationCertificate(
        cfg=cfg,
        threshold=threshold,
        k_exact=k_exact,
        m_star=rigid_from,
        rigidity_solutions=solutions,
        n_star=stars,
        scan_margin=margin,
    )
    logger.info(f"Certified termination for {cfg}: threshold {threshold}, {len(solutions)} rigidity solutions")
    return certificate


def check_certificate(cert: TerminationCertificate) -> bool:
    """Re-verify every claim of a certificate from its fields alone."""
    cfg = cert.cfg
    params, cap = cfg.params, cfg.capacity
    limit = 2 * cap

    def fail(reason: str) -> bool:
        logger.error(f"Certificate for {cfg} rejected: {reason}")
        return False

    if cert.conclusion != TERMINATES:
        return fail(f"unknown conclusion {cert.conclusion!r}")
    if cert.threshold != max(cert.m_star, cert.n_star + cert.k_exact + 1):
        return fail("threshold != max(m_star, n_star + K_exact + 1)")

    # n_star is the largest index with U_n <= b^N - 1 on the increasing tail
    if not (term(params, cert.n_star) <= cap - 1 < term(params, cert.n_star + 1)):
        return fail("n_star does not separate b^N - 1")

    # K_exact covers every admissible jump
    if params.is_fibonacci:
        if term(params, cert.k_exact + 2) < limit:
            return fail("F_{K+2} < 2b^N, so K_exact is too small")
    elif companion_term(params, cert.k_exact + 1) <= limit:
        return fail("V_{K+1} <= 2b^N, so K_exact is too small")

    # m_star satisfies the rigidity conditions
    m = cert.m_star
    if params.is_fibonacci:
        if rho_power_sign(FIBONACCI, m - 4, limit) < 0:
            return fail("phi^(m_star-4) < 2b^N")
    else:
        u_m = term(params, m)
        if not (
            term(params, m - 2) > cap
            and u_m > 0
            and (params.Q != 1 or u_m - term(params, m - 1) > cap)
            and companion_term(params, m) > limit + 1
        ):
            return fail("m_star violates a rigidity condition")

    # the rigidity solutions are exactly the admissible (k, t)
    powers = {cfg.base ** t: t for t in range(1, cfg.digits + 1)}
    expected = set()
    for k in range(1, cert.k_exact + 1):
        t = powers.get(companion_term(params, k))
        if t is not None and not (params.Q == -1 and k % 2 == 0):
            expected.add(RigiditySolution(k, t))
    if expected != set(cert.rigidity_solutions):
        return fail("rigidity solutions are incomplete or wrong")
    if params.Q == -1:
        for solution in cert.rigidity_solutions:
            if term(params, cert.threshold - solution.k) < cfg.base ** solution.t:
                return fail(f"remainder below b^t for {solution}")
    else:
        for solution in cert.rigidity_solutions:
            if not _forced_remainder_negative(params, cert.threshold, solution):
                return fail(f"remainder -U_(threshold-k) is not negative for {solution}")

    witness = _scan_for_steps(cfg, cert.threshold, cert.scan_margin)
    if witness is not None:
        return fail(f"step {witness} found at or above the threshold")
    return True
