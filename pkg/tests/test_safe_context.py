"""Tests for the tolerant MCP context wrapper."""
import asyncio

from safe_context import SafeContext


class BrokenContext:
    async def report_progress(self, current, total):
        raise RuntimeError("client went away")

    async def info(self, message):
        raise RuntimeError("client went away")


def test_without_context():
    ctx = SafeContext()
    assert asyncio.run(ctx.progress(1, 2, "halfway")) is True
    asyncio.run(ctx.info("no context"))


def test_context_errors_are_swallowed(caplog):
    ctx = SafeContext(BrokenContext())
    assert asyncio.run(ctx.progress(1, 2)) is False
    asyncio.run(ctx.info("still fine"))
    assert "client went away" in caplog.text


def test_missing_methods_are_skipped():
    ctx = SafeContext(object())
    assert asyncio.run(ctx.progress(0, 1)) is True
    asyncio.run(ctx.warning("nothing to forward to"))


def test_unknown_level_falls_back_to_info(caplog):
    ctx = SafeContext()
    with caplog.at_level("INFO", logger="lucaswalk.mcp"):
        asyncio.run(ctx.log("shout", "hello"))
    assert "hello" in caplog.text
