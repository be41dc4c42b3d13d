# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Analysis configuration: JSON documents, defaults and validation."""

from __future__ import annotations

import dataclasses
import json
import logging
import os
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, cast

from typing_extensions import Self

from ._coeffseq import CoefficientSpec
from ._exceptions import CoefficientDomainError, ConfigError
from ._misc_types import OutputFormat
from ._multiindex import MAX_ORDER
from ._presets import build_preset

logger = logging.getLogger(__name__)

OUT_ENV_VAR = 'JACOBI_SPECTRA_OUT'
"""Environment variable naming the default output directory."""

_FORMATS = ('json', 'csv', 'both')
_KNOWN_KEYS = frozenset(
    {
        'operator',
        'preset',
        'params',
        'm_max',
        'numeric_range',
        'truncations',
        'window',
        'tolerances',
        'seed',
        'threads',
        'cf_grid',
        'outputs',
    }
)


@dataclass(frozen=True)
class CFGrid:
    """Rectangular grid of `lam` values for continued fraction scans.

    Parameters
    ----------
    re_range, im_range : (float, float)
    counts : (int, int)
        Number of points along the real and imaginary axes.
    N_max : int, optional
        Deepest approximant; the largest truncation when omitted.
    """

    re_range: tuple[float, float] = (-10.0, 10.0)
    im_range: tuple[float, float] = (1.0, 5.0)
    counts: tuple[int, int] = (5, 3)
    N_max: int | None = None

    def __post_init__(self) -> None:
        if any(c < 1 for c in self.counts):
            raise ConfigError('`cf_grid.counts` should be positive integers')
        if self.N_max is not None and self.N_max < 2:
            raise ConfigError('`cf_grid.N_max` should be at least 2')


@dataclass(frozen=True)
class AnalysisConfig:
    """Validated settings of one analysis run.

    Parameters
    ----------
    spec : CoefficientSpec, optional
        Operator under study; required by every subcommand but `preset-list`.
    m_max : int, default ``6``
    numeric_range : (int, int, int), optional
        ``(n_start, n_end, stride)`` for sampled criteria; ``(m_max + 2, 2000, 1)`` when omitted.
    truncations : tuple of int, default ``(25, 50, 100)``
        Strictly increasing truncation sizes.
    window : (float, float), default ``(-50, 50)``
    eig_tol, cluster_tol, cf_tail_tol : float
        Positive tolerances.
    seed : int, default ``0``
    threads : int, default ``1``
    cf_grid : CFGrid
    output_dir : Path, optional
    output_format : {'json', 'csv', 'both'}, default ``'both'``

    Raises
    ------
    ConfigError
        If any value is out of range.

    Examples
    --------
    >>> cfg = AnalysisConfig.from_mapping({'preset': 'ex-B1', 'params': {'alpha': '2'}, 'm_max': 4})
    >>> cfg.numeric_range
    (6, 2000, 1)
    >>> cfg.spec.name
    'ex-B1(alpha=2)'
    """

    spec: CoefficientSpec | None = None
    m_max: int = 6
    numeric_range: tuple[int, int, int] | None = None
    truncations: tuple[int, ...] = (25, 50, 100)
    window: tuple[float, float] = (-50.0, 50.0)
    eig_tol: float = 1e-12
    cluster_tol: float = 1e-3
    cf_tail_tol: float = 1e-8
    seed: int = 0
    threads: int = 1
    cf_grid: CFGrid = field(default_factory=CFGrid)
    output_dir: Path | None = None
    output_format: OutputFormat = 'both'

    def __post_init__(self) -> None:
        if not 1 <= self.m_max <= MAX_ORDER:
            raise ConfigError(f'`m_max` should lie in 1..{MAX_ORDER}, got {self.m_max}')
        if self.numeric_range is None:
            object.__setattr__(self, 'numeric_range', (self.m_max + 2, 2000, 1))
        else:
            start, stop, stride = self.numeric_range
            if start < 1 or stop < start or stride < 1:
                raise ConfigError(
                    '`numeric_range` should satisfy start >= 1, stop >= start and stride >= 1'
                )
        truncations = tuple(self.truncations)
        if not truncations or truncations[0] < 1:
            raise ConfigError('`truncations` should be a nonempty list of positive integers')
        if any(b <= a for a, b in zip(truncations, truncations[1:])):
            raise ConfigError('`truncations` should be strictly increasing')
        object.__setattr__(self, 'truncations', truncations)
        if not self.window[0] < self.window[1]:
            raise ConfigError('`window` should be an interval (lo, hi) with lo < hi')
        for name in ('eig_tol', 'cluster_tol', 'cf_tail_tol'):
            if not getattr(self, name) > 0:
                raise ConfigError(f'`{name}` should be positive')
        if self.threads < 1:
            raise ConfigError('`threads` should be a positive integer')
        if self.output_format not in _FORMATS:
            raise ConfigError(f'`outputs.format` should be one of {", ".join(_FORMATS)}')

    @property
    def N_max(self) -> int:
        """Deepest continued fraction approximant.

        Returns
        -------
        int
        """
        return self.cf_grid.N_max or self.truncations[-1]

    def require_spec(self) -> CoefficientSpec:
        """Return the operator, or raise when none is configured.

        Returns
        -------
        CoefficientSpec

        Raises
        ------
        ConfigError
            If neither an operator document nor a preset was given.
        """
        if self.spec is None:
            raise ConfigError('no operator configured; pass --config with `operator` or --preset')
        return self.spec

    def replace(self, **changes: Any) -> Self:
        """Copy with some fields changed, validating the result.

        Parameters
        ----------
        **changes
            Field values; ``None`` values are ignored.

        Returns
        -------
        AnalysisConfig
        """
        changes = {k: v for k, v in changes.items() if v is not None}
        if 'm_max' in changes and 'numeric_range' not in changes and self._default_range():
            changes['numeric_range'] = None
        return dataclasses.replace(self, **changes)

    def _default_range(self) -> bool:
        return self.numeric_range == (self.m_max + 2, 2000, 1)

    @classmethod
    def from_mapping(cls, doc: Mapping[str, Any]) -> Self:
        """Build a config from a JSON-like document.

        Parameters
        ----------
        doc : mapping
            Keys `operator` (a coefficient document) or `preset` with optional `params`, and
            optionally `m_max`, `numeric_range`, `truncations`, `window`, `tolerances`, `seed`,
            `threads`, `cf_grid` and `outputs`.

        Returns
        -------
        AnalysisConfig

        Raises
        ------
        ConfigError
            If the document is malformed.
        """
        if not isinstance(doc, Mapping):
            raise ConfigError('configuration should be a JSON object')
        unknown = set(doc) - _KNOWN_KEYS
        if unknown:
            raise ConfigError(f'unknown configuration key(s): {", ".join(sorted(unknown))}')
        if 'operator' in doc and 'preset' in doc:
            raise ConfigError('give either `operator` or `preset`, not both')

        kwargs: dict[str, Any] = {}
        try:
            if 'operator' in doc:
                kwargs['spec'] = CoefficientSpec.from_mapping(doc['operator'])
            elif 'preset' in doc:
                kwargs['spec'] = build_preset(str(doc['preset']), doc.get('params'))
        except CoefficientDomainError as exc:
            raise ConfigError(f'invalid `operator`: {exc}') from None

        for key in ('m_max', 'seed', 'threads'):
            if key in doc:
                kwargs[key] = _int(doc[key], key)
        if 'numeric_range' in doc:
            kwargs['numeric_range'] = cast(
                tuple[int, int, int], _ints(doc['numeric_range'], 'numeric_range', 3)
            )
        if 'truncations' in doc:
            kwargs['truncations'] = _ints(doc['truncations'], 'truncations')
        if 'window' in doc:
            kwargs['window'] = _pair(doc['window'], 'window')

        tolerances = doc.get('tolerances', {})
        if not isinstance(tolerances, Mapping):
            raise ConfigError('`tolerances` should be an object')
        for key, value in tolerances.items():
            if key not in ('eig_tol', 'cluster_tol', 'cf_tail_tol'):
                raise ConfigError(f'unknown tolerance `{key}`')
            kwargs[key] = _float(value, f'tolerances.{key}')

        if 'cf_grid' in doc:
            grid = doc['cf_grid']
            if not isinstance(grid, Mapping):
                raise ConfigError('`cf_grid` should be an object')
            grid_kwargs: dict[str, Any] = {}
            for key in ('re_range', 'im_range'):
                if key in grid:
                    grid_kwargs[key] = _pair(grid[key], f'cf_grid.{key}')
            if 'counts' in grid:
                grid_kwargs['counts'] = _ints(grid['counts'], 'cf_grid.counts', 2)
            if grid.get('N_max') is not None:
                grid_kwargs['N_max'] = _int(grid['N_max'], 'cf_grid.N_max')
            kwargs['cf_grid'] = CFGrid(**grid_kwargs)

        outputs = doc.get('outputs', {})
        if not isinstance(outputs, Mapping):
            raise ConfigError('`outputs` should be an object')
        if outputs.get('directory') is not None:
            kwargs['output_dir'] = Path(outputs['directory'])
        if 'format' in outputs:
            kwargs['output_format'] = outputs['format']
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | os.PathLike[str]) -> Self:
        """Read a JSON configuration file.

        Parameters
        ----------
        path : str or PathLike

        Returns
        -------
        AnalysisConfig

        Raises
        ------
        ConfigError
            If the file cannot be read or parsed.
        """
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as exc:
            raise ConfigError(f'cannot read configuration {os.fspath(path)!r}: {exc}') from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f'configuration {os.fspath(path)!r} is not valid JSON: {exc}'
            ) from None
        logger.debug('loaded configuration from %s', path)
        return cls.from_mapping(doc)


def resolve_output_dir(cli_out: str | os.PathLike[str] | None, config: AnalysisConfig) -> Path:
    """Output directory: `--out`, then the environment variable, then the config, then cwd.

    Parameters
    ----------
    cli_out : str or PathLike, optional
    config : AnalysisConfig

    Returns
    -------
    Path
    """
    if cli_out is not None:
        return Path(cli_out)
    env = os.environ.get(OUT_ENV_VAR)
    if env:
        return Path(env)
    if config.output_dir is not None:
        return config.output_dir
    return Path.cwd()


def _int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f'`{name}` should be an integer')
    return value


def _float(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ConfigError(f'`{name}` should be a number')
    return float(value)


def _ints(value: Any, name: str, length: int | None = None) -> tuple[int, ...]:
    if isinstance(value, str) or not isinstance(value, Sequence):
        raise ConfigError(f'`{name}` should be an array of integers')
    if length is not None and len(value) != length:
        raise ConfigError(f'`{name}` should have exactly {length} entries')
    return tuple(_int(v, name) for v in value)


def _pair(value: Any, name: str) -> tuple[float, float]:
    if isinstance(value, str) or not isinstance(value, Sequence) or len(value) != 2:
        raise ConfigError(f'`{name}` should be an array [lo, hi]')
    return _float(value[0], name), _float(value[1], name)
