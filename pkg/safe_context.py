#!/usr/bin/env python3

"""
SafeContext - a tolerant wrapper around MCP context objects.

Long verification runs report progress and log lines through the MCP
context when the client supports it and fall back to local logging when it
does not (or when the tools are called directly, without a context).
"""

import logging
from typing import Optional

LEVELS = ("debug", "info", "warning", "error")


class SafeContext:
    """Safe context wrapper that handles missing attributes gracefully."""

    def __init__(self, ctx=None):
        self.ctx = ctx
        self.logger = logging.getLogger("lucaswalk.mcp")

    async def progress(self, current: int, total: int, message: Optional[str] = None) -> bool:
        """
        Report progress of a multi-part job.

        Returns:
            bool: False only when the context raised while reporting
        """
        if message:
            self.logger.info(f"Progress {current}/{total}: {message}")

        if self.ctx is None or not hasattr(self.ctx, "report_progress"):
            return True

        try:
            await self.ctx.report_progress(current, total)
            return True
        except Exception as e:
            self.logger.warning(f"Error reporting progress: {e}")
            return False

    async def log(self, level: str, message: str) -> None:
        """Log locally, then forward to the context method of the same name."""
        if level not in LEVELS:
            level = "info"
        getattr(self.logger, level)(message)

        if self.ctx is None:
            return

        try:
            method = getattr(self.ctx, level, None)
            if method is not None:
                await method(message)
        except Exception as e:
            self.logger.warning(f"Error when using context.{level}(): {e}")

    async def info(self, message: str) -> None:
        await self.log("info", message)

    async def warning(self, message: str) -> None:
        await self.log("warning", message)

    async def error(self, message: str) -> None:
        await self.log("error", message)
