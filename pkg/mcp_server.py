#!/usr/bin/env python3

"""
Lucas Walk MCP Module
---------------------
Exposes the walk analysis, step enumeration, walk simulation, termination
certificates and verification suites as MCP tools. Every tool returns the
same JSON report envelope as the command-line interface; failures come back
as {"success": false, "error": ...} objects.

Stdio transport only.
"""

import asyncio
import functools
import json
import logging
from typing import Any, Callable, Optional

from mcp.server.fastmcp import Context, FastMCP

from bounds import bound_report
from config_loader import get_config
from errors import (
    CertificationError,
    DomainError,
    LucasWalkError,
    MembershipError,
    ParameterError,
)
from reports import VERSION, make_envelope, render_json
from safe_context import SafeContext
from sequences import SequenceParams
from stepper import WalkConfig
from verification import SUITES, run_suites
from walker import (
    WalkFailure,
    certify_termination,
    check_certificate,
    longest_walk,
    parse_blocks,
    simulate_walk,
    start_index_for_value,
    steps_in_window,
)

logger = logging.getLogger(__name__)

mcp = FastMCP("lucaswalk")


def _walk_config(base: int, digits: int, params: str) -> WalkConfig:
    return WalkConfig(SequenceParams.parse(params), base, digits)


def _error(error: Exception, **extra: Any) -> str:
    """Serialize a failure the way every tool reports it."""
    payload = {"success": False, "error": str(error), "error_type": type(error).__name__}
    if isinstance(error, ParameterError):
        payload["invariant"] = error.invariant
    elif isinstance(error, MembershipError):
        payload["nearest_members"] = [str(v) for v in error.nearest]
    elif isinstance(error, CertificationError):
        payload["condition"] = error.condition
    payload.update(extra)
    return json.dumps(payload)


async def _in_executor(func: Callable, *args, **kwargs):
    # exact big-integer work blocks; keep it off the event loop
    loop = asyncio.get_running_loop()
    return await loop.run_in_executor(None, functools.partial(func, *args, **kwargs))


# MCP Tool: Bound report for one configuration
@mcp.tool()
async def analyze_walks(ctx: Context = None, base: int = 10, digits: int = 1, params: str = "1,-1") -> str:
    """
    Compute n_star, the jump bounds, m_star, the certificate threshold and the
    measured longest walk for base-b, N-digit appending.

    Args:
        base: Base b >= 2
        digits: Maximum block length N >= 1
        params: Sequence parameters "P,Q" (default Fibonacci "1,-1")

    Returns:
        JSON report envelope with a bound_report payload
    """
    safe_ctx = SafeContext(ctx)
    try:
        cfg = _walk_config(base, digits, params)
        await safe_ctx.info(f"Analyzing walks for {cfg}")
        report = await _in_executor(bound_report, cfg)
        return render_json(make_envelope("analyze", cfg, "bound_report", report))
    except LucasWalkError as e:
        await safe_ctx.error(f"Analysis failed: {e}")
        return _error(e)


# MCP Tool: Enumerate step witnesses
@mcp.tool()
async def list_steps(
    ctx: Context = None,
    base: int = 10,
    digits: int = 1,
    params: str = "1,-1",
    from_index: Optional[int] = None,
    scan_margin: Optional[int] = None,
) -> str:
    """
    List step witnesses (m, k, t, r) with U_{m+k} = b^t U_m + r.

    Args:
        base: Base b >= 2
        digits: Maximum block length N >= 1
        params: Sequence parameters "P,Q"
        from_index: Only list steps from this index; omit to list every
            index up to the certificate threshold plus the scan margin
        scan_margin: Indices scanned past the threshold (default from config)

    Returns:
        JSON report envelope with a witnesses payload sorted by (m, t, k)
    """
    safe_ctx = SafeContext(ctx)
    try:
        cfg = _walk_config(base, digits, params)
        witnesses = await _in_executor(steps_in_window, cfg, from_index, scan_margin)
        await safe_ctx.info(f"Found {len(witnesses)} steps for {cfg}")
        return render_json(make_envelope("steps", cfg, "witnesses", witnesses))
    except LucasWalkError as e:
        await safe_ctx.error(f"Step enumeration failed: {e}")
        return _error(e)


# MCP Tool: Simulate a walk or find the longest one
@mcp.tool()
async def simulate_digit_walk(
    ctx: Context = None,
    base: int = 10,
    digits: int = 1,
    params: str = "1,-1",
    start_value: str = "",
    blocks: str = "",
    longest: bool = False,
) -> str:
    """
    Append digit blocks to a sequence member and check that every
    intermediate value stays in the sequence.

    Args:
        base: Base b >= 2
        digits: Maximum block length N >= 1
        params: Sequence parameters "P,Q"
        start_value: Starting sequence member, as a decimal string
        blocks: Comma-separated t:r blocks, e.g. "1:3,1:2"
        longest: Ignore start_value/blocks and return the deterministic longest walk

    Returns:
        JSON report envelope with a walk or walk_failure payload
    """
    safe_ctx = SafeContext(ctx)
    try:
        cfg = _walk_config(base, digits, params)
        if longest:
            _, walk = await _in_executor(longest_walk, cfg)
            return render_json(make_envelope("walk", cfg, "walk", walk))

        if not start_value:
            raise DomainError("start_value is required unless longest is set")
        try:
            value = int(start_value)
        except ValueError:
            raise DomainError(f"start_value must be an integer, got {start_value!r}")
        start = start_index_for_value(cfg.params, value)
        result = await _in_executor(simulate_walk, cfg, start, parse_blocks(blocks))

        if isinstance(result, WalkFailure):
            await safe_ctx.warning(f"Walk left the sequence at block {result.block_index}: {result.value}")
            return render_json(make_envelope("walk", cfg, "walk_failure", result))
        return render_json(make_envelope("walk", cfg, "walk", result))
    except LucasWalkError as e:
        await safe_ctx.error(f"Walk simulation failed: {e}")
        return _error(e)


# MCP Tool: Termination certificate
@mcp.tool()
async def certify_walk_termination(
    ctx: Context = None,
    base: int = 10,
    digits: int = 1,
    params: str = "1,-1",
    scan_margin: Optional[int] = None,
) -> str:
    """
    Build a termination certificate and re-check it independently.

    Returns:
        JSON report envelope with a certificate payload (conclusion TERMINATES)
    """
    safe_ctx = SafeContext(ctx)
    try:
        cfg = _walk_config(base, digits, params)
        await safe_ctx.progress(0, 2, f"Certifying {cfg}")
        certificate = await _in_executor(certify_termination, cfg, scan_margin)
        await safe_ctx.progress(1, 2, "Re-checking certificate")
        if not await _in_executor(check_certificate, certificate):
            raise CertificationError("independent re-check of the certificate")
        await safe_ctx.progress(2, 2, f"Threshold {certificate.threshold}")
        return render_json(make_envelope("certify", cfg, "certificate", certificate))
    except LucasWalkError as e:
        await safe_ctx.error(f"Certification failed: {e}")
        return _error(e)


# MCP Tool: Verification suites
@mcp.tool()
async def run_verification_suite(
    ctx: Context = None,
    suite: str = "identities",
    max_m: Optional[int] = None,
    max_k: Optional[int] = None,
) -> str:
    """
    Run one verification suite, or every suite with "all".

    Args:
        suite: identities, growth, differential, rigidity, theorem, certificates or all
        max_m: Upper index for the identity and growth suites
        max_k: Upper jump for the identity suite

    Returns:
        JSON report envelope with a suites payload
    """
    safe_ctx = SafeContext(ctx)
    if suite != "all" and suite not in SUITES:
        return _error(DomainError(f"unknown suite {suite!r}"), suites=list(SUITES) + ["all"])

    names = SUITES if suite == "all" else (suite,)
    results = []
    try:
        for i, name in enumerate(names):
            await safe_ctx.progress(i, len(names), f"Running suite {name}")
            results.extend(await _in_executor(run_suites, name, max_m, max_k, None, None, get_config().scan_margin))
        await safe_ctx.progress(len(names), len(names), "Done")
    except LucasWalkError as e:
        await safe_ctx.error(f"Verification failed: {e}")
        return _error(e)

    failed = [r.name for r in results if not r.passed]
    if failed:
        await safe_ctx.error(f"Suites failed: {', '.join(failed)}")
    return render_json(make_envelope("verify", None, "suites", results))


def main() -> None:
    get_config()
    logger.info(f"Starting lucaswalk MCP server v{VERSION}")
    try:
        mcp.run()
    except KeyboardInterrupt:
        logger.info("Shutting down lucaswalk MCP server")


if __name__ == "__main__":
    main()
