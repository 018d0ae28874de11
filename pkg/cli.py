#!/usr/bin/env python3

"""
Command-line interface for lucaswalk.

Analyze, enumerate, simulate, verify and certify digit-appending walks
along Fibonacci and Lucas sequences. Reports go to stdout; diagnostics go
to stderr.

Usage:
    lucaswalk analyze --base 10 --digits 1
    lucaswalk steps --base 4 --all
    lucaswalk walk --base 10 --start-value 1 --blocks 1:3
    lucaswalk walk --base 4 --longest
    lucaswalk verify --suite identities --max-m 200
    lucaswalk certify --base 14 --params 2,-1

Exit codes: 0 success, 1 failed verification, 2 invalid flags or
parameters, 3 membership failure, 4 certification failure.
"""

import functools
import sys
from typing import Optional

import click

from bounds import bound_report
from config_loader import get_config, reset_config
from errors import CertificationError, DomainError, MembershipError, ResourceLimitError
from reports import VERSION, make_envelope, render
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

__all__ = [
    "cli",
]

EXIT_SUITE_FAILED = 1
EXIT_USAGE = 2
EXIT_MEMBERSHIP = 3
EXIT_CERTIFICATION = 4

FORMATS = ("json", "csv", "table")


def _fail(message: str, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def handle_errors(func):
    """Map library errors onto the stable exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except MembershipError as e:
            _fail(str(e), EXIT_MEMBERSHIP)
        except CertificationError as e:
            _fail(str(e), EXIT_CERTIFICATION)
        except (DomainError, ResourceLimitError) as e:
            _fail(str(e), EXIT_USAGE)
    return wrapper


def walk_options(func):
    """--base, --digits and --params shared by every per-configuration command."""
    func = click.option("--params", default="1,-1", show_default=True,
                        help="Sequence parameters P,Q (1,-1 is Fibonacci, 2,-1 is Pell)")(func)
    func = click.option("--digits", "-N", type=int, default=1, show_default=True,
                        help="Maximum number of appended digits")(func)
    func = click.option("--base", "-b", type=int, default=10, show_default=True, help="Base b")(func)
    return func


def format_option(func):
    return click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
                        show_default=True, help="Output format")(func)


def build_config(base: int, digits: int, params: str) -> WalkConfig:
    return WalkConfig(SequenceParams.parse(params), base, digits)


@click.group()
@click.version_option(version=VERSION, prog_name="lucaswalk")
@click.option("--max-index", type=click.IntRange(min=1), default=None,
              help="Largest sequence index any operation may touch (env LUCASWALK_MAX_INDEX)")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Logging level for stderr diagnostics (env LUCASWALK_LOG_LEVEL)")
def cli(max_index: Optional[int], log_level: Optional[str]):
    """
    lucaswalk - digit-appending walks along Fibonacci and Lucas sequences.

    Every step appends at most N base-b digits to a sequence member and must
    land on a later member. These commands measure how long such walks get
    and prove that they terminate.
    """
    config = reset_config()
    if max_index is not None:
        config.update("limits", "max_index", max_index)
    if log_level is not None:
        config.update("logging", "level", log_level)


@cli.command()
@walk_options
@format_option
@handle_errors
def analyze(base: int, digits: int, params: str, fmt: str):
    """Bound report: n_star, K, m_star, threshold, closed form and L_max."""
    cfg = build_config(base, digits, params)
    report = bound_report(cfg)
    click.echo(render(make_envelope("analyze", cfg, "bound_report", report), fmt))
    if not report.satisfied:
        click.echo(f"Warning: L_max {report.l_max} exceeds the bound {report.theorem_bound}", err=True)


@cli.command()
@walk_options
@click.option("--from-index", type=int, default=None, help="List steps from this index only")
@click.option("--all", "all_indices", is_flag=True, help="List steps from every index up to threshold + margin")
@click.option("--margin", type=int, default=None, help="Indices scanned past the threshold (env LUCASWALK_MARGIN)")
@format_option
@handle_errors
def steps(base: int, digits: int, params: str, from_index: Optional[int], all_indices: bool,
          margin: Optional[int], fmt: str):
    """List step witnesses (m, k, t, r), sorted by (m, t, k)."""
    if (from_index is None) == (not all_indices):
        raise click.UsageError("pass exactly one of --from-index or --all")
    cfg = build_config(base, digits, params)
    witnesses = steps_in_window(cfg, from_index, margin)
    click.echo(render(make_envelope("steps", cfg, "witnesses", witnesses), fmt))


@cli.command()
@walk_options
@click.option("--start-value", type=int, default=None, help="Sequence member to start from")
@click.option("--blocks", default=None, help="Appended blocks as comma-separated t:r pairs, e.g. 1:3,1:2")
@click.option("--longest", is_flag=True, help="Emit the deterministic longest walk instead")
@format_option
@handle_errors
def walk(base: int, digits: int, params: str, start_value: Optional[int], blocks: Optional[str],
         longest: bool, fmt: str):
    """Simulate appending blocks to a member, or find the longest walk."""
    cfg = build_config(base, digits, params)
    if longest:
        if start_value is not None or blocks is not None:
            raise click.UsageError("--longest takes no --start-value or --blocks")
        _, record = longest_walk(cfg)
        click.echo(render(make_envelope("walk", cfg, "walk", record), fmt))
        return

    if start_value is None or blocks is None:
        raise click.UsageError("pass --start-value and --blocks, or --longest")
    start = start_index_for_value(cfg.params, start_value)
    result = simulate_walk(cfg, start, parse_blocks(blocks))
    if isinstance(result, WalkFailure):
        click.echo(render(make_envelope("walk", cfg, "walk_failure", result), fmt))
        _fail(f"block {result.block_index} gives {result.value}, which is not a later sequence member",
              EXIT_MEMBERSHIP)
    click.echo(render(make_envelope("walk", cfg, "walk", result), fmt))


@cli.command()
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True,
              help="Verification suite to run")
@click.option("--max-m", type=click.IntRange(min=1), default=None, help="Upper index for identities and growth")
@click.option("--max-k", type=click.IntRange(min=1), default=None, help="Upper jump for identities")
@click.option("--params-grid", default=None, help="Parameter sets for identities, e.g. '1,-1;2,-1;3,1'")
@click.option("--base", "-b", type=int, default=None, help="Restrict grid suites to this base")
@click.option("--digits", "-N", type=int, default=1, show_default=True, help="Digit budget with --base")
@click.option("--params", default="1,-1", show_default=True, help="Sequence parameters with --base")
@click.option("--margin", type=int, default=None, help="Scan margin for the certificates suite")
@format_option
@handle_errors
def verify(suite: str, max_m: Optional[int], max_k: Optional[int], params_grid: Optional[str],
           base: Optional[int], digits: int, params: str, margin: Optional[int], fmt: str):
    """Run exact verification suites; exit 1 when any suite fails."""
    grid = None
    if params_grid:
        grid = [SequenceParams.parse(item) for item in params_grid.split(";") if item.strip()]
    cfg = build_config(base, digits, params) if base is not None else None
    cfgs = (cfg,) if cfg is not None else None

    scan_margin = get_config().scan_margin if margin is None else margin
    if scan_margin < 1:
        raise DomainError(f"scan margin must be >= 1, got {scan_margin}")

    results = run_suites(suite, max_m, max_k, grid, cfgs, scan_margin)
    click.echo(render(make_envelope("verify", cfg, "suites", results), fmt))

    failed = [r for r in results if not r.passed]
    for result in failed:
        click.echo(f"Suite {result.name} failed: {result.counterexample}", err=True)
    if failed:
        sys.exit(EXIT_SUITE_FAILED)


@cli.command()
@walk_options
@click.option("--margin", type=int, default=None, help="Indices scanned past the threshold (env LUCASWALK_MARGIN)")
@format_option
@handle_errors
def certify(base: int, digits: int, params: str, margin: Optional[int], fmt: str):
    """Build a termination certificate and re-check it independently."""
    cfg = build_config(base, digits, params)
    certificate = certify_termination(cfg, margin)
    if not check_certificate(certificate):
        raise CertificationError("independent re-check of the certificate")
    click.echo(render(make_envelope("certify", cfg, "certificate", certificate), fmt))


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
