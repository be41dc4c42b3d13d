# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Command-line interface: `jacobi-spectra <subcommand>`.

Exit codes are 0 for a completed analysis (whatever the verdicts), 1 when `verify` finds a
failing identity, and 2 for usage or configuration errors.
"""

from __future__ import annotations

import functools
import logging
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TypeVar

import click

from . import __version__
from ._cfrac import convergence_scan, rectangular_grid
from ._conditions import run_battery
from ._config import AnalysisConfig, resolve_output_dir
from ._exceptions import CoefficientDomainError, ConfigError
from ._multiindex import Variant, generate
from ._presets import PRESETS, build_preset, parse_param
from ._reports import (
    ReportWriter,
    cfrac_frame,
    criteria_document,
    interlacing_summary,
    limits_frame,
    spectrum_frame,
    verdict_table,
    verdicts_frame,
)
from ._spectra import limit_points
from ._verify import run_verification

logger = logging.getLogger(__name__)

F = TypeVar('F', bound=Callable[..., Any])


class UsageFailure(click.ClickException):
    """Configuration or usage error, reported with exit code 2."""

    exit_code = 2


@dataclass(frozen=True)
class _State:
    config: AnalysisConfig
    out: Path | None

    def writer(self) -> ReportWriter:
        directory = resolve_output_dir(self.out, self.config)
        return ReportWriter(directory, self.config.output_format)


def _usage_errors(func: F) -> F:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (ConfigError, CoefficientDomainError) as exc:
            raise UsageFailure(str(exc)) from exc

    return wrapper  # type: ignore[return-value]


def _setup_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s', force=True
    )


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.option(
    '--config',
    'config_path',
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help='JSON configuration file.',
)
@click.option('--preset', help='Built-in operator; see `preset-list`.')
@click.option(
    '--param',
    'params',
    multiple=True,
    metavar='KEY=VALUE',
    help='Preset parameter as an exact rational, e.g. alpha=17/4 (repeatable).',
)
@click.option(
    '--out',
    type=click.Path(file_okay=False, path_type=Path),
    help='Output directory (default: $JACOBI_SPECTRA_OUT, then the config, then cwd).',
)
@click.option('--format', 'output_format', type=click.Choice(['json', 'csv', 'both']))
@click.option('--m-max', type=click.IntRange(min=1), help='Largest order m of the m-conditions.')
@click.option('--seed', type=int, help='Seed of the random verification suites.')
@click.option('--threads', type=click.IntRange(min=1), help='Worker threads.')
@click.option('-v', '--verbose', count=True, help='-v for INFO, -vv for DEBUG logs on stderr.')
@click.version_option(version=__version__, prog_name='jacobi-spectra')
@click.pass_context
@_usage_errors
def main(
    ctx: click.Context,
    config_path: Path | None,
    preset: str | None,
    params: tuple[str, ...],
    out: Path | None,
    output_format: str | None,
    m_max: int | None,
    seed: int | None,
    threads: int | None,
    verbose: int,
) -> None:
    """Spectral analysis of Jacobi operators: self-adjointness criteria, truncation spectra,
    limit points and continued fractions.
    """
    _setup_logging(verbose)
    config = AnalysisConfig.load(config_path) if config_path else AnalysisConfig()
    if params and preset is None:
        raise ConfigError('--param requires --preset')
    spec = None
    if preset is not None:
        spec = build_preset(preset, dict(parse_param(p) for p in params))
        if config.spec is not None:
            logger.info('--preset %s replaces the operator of the configuration', preset)
    config = config.replace(
        spec=spec, output_format=output_format, m_max=m_max, seed=seed, threads=threads
    )
    ctx.obj = _State(config, out)


def _state(ctx: click.Context) -> _State:
    state = ctx.find_object(_State)
    assert state is not None
    return state


@main.command()
@click.pass_context
@_usage_errors
def criteria(ctx: click.Context) -> None:
    """Run the battery of self-adjointness criteria up to order m_max."""
    state = _state(ctx)
    cfg = state.config
    spec = cfg.require_spec()
    report = run_battery(spec, cfg.m_max, cfg.numeric_range, threads=cfg.threads)
    writer = state.writer()
    writer.json('criteria', criteria_document(spec, report, cfg.m_max))
    writer.csv('criteria', verdicts_frame(report))
    table = verdict_table(spec, report)
    writer.text('criteria.txt', table)
    click.echo(table, nl=False)


@main.command()
@click.pass_context
@_usage_errors
def spectrum(ctx: click.Context) -> None:
    """Eigenvalues and last eigenvector coordinates of every configured truncation."""
    state = _state(ctx)
    cfg = state.config
    spec = cfg.require_spec()
    frame = spectrum_frame(spec, cfg.truncations, cfg.eig_tol)
    interlacing = interlacing_summary(spec, cfg.truncations, cfg.eig_tol)
    writer = state.writer()
    writer.csv('spectrum', frame)
    writer.json(
        'spectrum',
        {
            'operator': spec.to_mapping(),
            'truncations': list(cfg.truncations),
            'interlacing': interlacing,
            'eigenvalues': {
                str(n): group['lambda'].tolist() for n, group in frame.groupby('N', sort=True)
            },
        },
    )
    for n in cfg.truncations:
        count = int((frame['N'] == n).sum())
        status = 'ok' if interlacing[str(n)] else 'FAILED'
        click.echo(f'N={n}: {count} eigenvalues, interlacing {status}')


@main.command()
@click.pass_context
@_usage_errors
def limits(ctx: click.Context) -> None:
    """Estimate limit points of truncation spectra inside the configured window."""
    state = _state(ctx)
    cfg = state.config
    spec = cfg.require_spec()
    report = limit_points(
        spec, cfg.truncations, cfg.window, cfg.cluster_tol, tol=cfg.eig_tol, threads=cfg.threads
    )
    writer = state.writer()
    writer.json('limits', {'operator': spec.to_mapping(), **report.to_mapping()})
    writer.csv('limits', limits_frame(report))
    click.echo(f'{len(report.candidates)} candidates in [{cfg.window[0]:g}, {cfg.window[1]:g}]')
    for c in report.candidates:
        click.echo(f'  {c.location:.12e}  spread {c.spread:.3e}')


@main.command()
@click.pass_context
@_usage_errors
def cfrac(ctx: click.Context) -> None:
    """Scan the convergence of the continued fraction over the configured lambda grid."""
    state = _state(ctx)
    cfg = state.config
    spec = cfg.require_spec()
    grid = rectangular_grid(cfg.cf_grid.re_range, cfg.cf_grid.im_range, cfg.cf_grid.counts)
    evaluations = convergence_scan(
        spec, grid, cfg.N_max, cfg.cf_tail_tol, eig_tol=cfg.eig_tol, threads=cfg.threads
    )
    writer = state.writer()
    writer.json(
        'cfrac',
        {
            'operator': spec.to_mapping(),
            'N_max': cfg.N_max,
            'tail_tol': cfg.cf_tail_tol,
            'points': [ev.to_mapping() for ev in evaluations],
        },
    )
    writer.csv('cfrac', cfrac_frame(evaluations))
    converged = sum(ev.converged for ev in evaluations)
    click.echo(f'{converged} of {len(evaluations)} grid points converged (N_max={cfg.N_max})')


@main.command()
@click.option(
    '--rtol',
    type=click.FloatRange(min=0.0),
    default=1e-10,
    show_default=True,
    help='Relative tolerance of the floating-point identities.',
)
@click.option(
    '--negative-control',
    is_flag=True,
    help='Feed eigenvectors of a sign-corrupted matrix to the expansion suite.',
)
@click.pass_context
@_usage_errors
def verify(ctx: click.Context, rtol: float, negative_control: bool) -> None:
    """Run the seeded identity suites; exit 1 if any identity fails."""
    state = _state(ctx)
    report = run_verification(state.config.seed, rtol, negative_control=negative_control)
    state.writer().json('verify', report.to_mapping())
    for suite in report.suites:
        status = 'ok' if suite.passed else f'FAILED ({len(suite.failures)})'
        click.echo(f'{suite.name}: {suite.checked} checked, {suite.skipped} skipped, {status}')
    if not report.passed:
        ctx.exit(1)


@main.command('preset-list')
def preset_list() -> None:
    """List the built-in presets with their parameters and defaults."""
    for preset in PRESETS.values():
        params = ', '.join(f'{k}={v}' for k, v in preset.defaults.items()) or '-'
        click.echo(f'{preset.name:<10} {params:<28} {preset.summary}')


@main.command()
@click.argument('variant', type=click.Choice([v.value for v in Variant]))
@click.argument('m', type=click.IntRange(min=1))
@_usage_errors
def indices(variant: str, m: int) -> None:
    """Print the multi-index set of a variant and order (debugging aid)."""
    try:
        pairs = generate(variant, m)
    except ValueError as exc:
        raise UsageFailure(str(exc)) from exc
    click.echo(f'{len(pairs)} pairs')
    for pair in pairs:
        click.echo(str(pair))
