# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Tabular and JSON reports, written atomically."""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from collections.abc import Sequence
from importlib import resources
from pathlib import Path
from typing import Any

import pandas as pd

from ._cfrac import CFEvaluation
from ._coeffseq import CoefficientSpec
from ._conditions import BatteryReport
from ._misc_types import OutputFormat
from ._spectra import LimitPointReport, eigenpairs, interlacing_check, truncate

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17e'
"""Full-precision, locale-independent format of floats in CSV output."""

SCHEMA_VERSION = 1


def atomic_write_text(path: str | os.PathLike[str], text: str) -> Path:
    """Write `text` to `path` through a temporary file in the same directory.

    Parameters
    ----------
    path : str or PathLike
    text : str

    Returns
    -------
    Path
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f'.{target.name}.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.info('wrote %s', target)
    return target


def _finite_or_str(obj: Any) -> Any:
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _finite_or_str(v) for k, v in obj.items()}
    if isinstance(obj, list | tuple):
        return [_finite_or_str(v) for v in obj]
    return obj


def to_json(doc: Any) -> str:
    """Render a report document as strict JSON.

    Non-finite floats are written as the strings ``'inf'``, ``'-inf'`` and ``'nan'``.

    Parameters
    ----------
    doc : Any

    Returns
    -------
    str

    Examples
    --------
    >>> print(to_json({'x': float('inf'), 'y': [1.5]}), end='')
    {
      "x": "inf",
      "y": [
        1.5
      ]
    }
    """
    return json.dumps(_finite_or_str(doc), indent=2, allow_nan=False) + '\n'


def to_csv(frame: pd.DataFrame) -> str:
    """Render a report table as CSV with full-precision floats.

    Parameters
    ----------
    frame : DataFrame

    Returns
    -------
    str
    """
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')


def load_schema() -> dict[str, Any]:
    """Load the JSON schema of criteria reports shipped with the package.

    Returns
    -------
    dict
    """
    text = resources.files('jacobi_spectra').joinpath('schemas/verdicts.schema.json').read_text(
        encoding='utf-8'
    )
    doc: dict[str, Any] = json.loads(text)
    return doc


# Criteria
# --------


def criteria_document(spec: CoefficientSpec, report: BatteryReport, m_max: int) -> dict[str, Any]:
    """JSON document of a criteria run.

    Parameters
    ----------
    spec : CoefficientSpec
    report : BatteryReport
    m_max : int

    Returns
    -------
    dict
    """
    return {
        'schema_version': SCHEMA_VERSION,
        'operator': {'name': spec.name, 'coefficients': spec.to_mapping()},
        'm_max': m_max,
        **report.to_mapping(),
    }


def verdicts_frame(report: BatteryReport) -> pd.DataFrame:
    """One row per verdict: label, outcome, mode and the leading evidence.

    Parameters
    ----------
    report : BatteryReport

    Returns
    -------
    DataFrame
    """
    rows = []
    for v in report:
        ev = v.evidence
        rows.append(
            {
                'criterion': v.label,
                'm': v.m,
                'outcome': v.outcome.value,
                'mode': v.mode.value,
                'exponent': None if ev.exponent is None else str(ev.exponent),
                'constant': None if ev.constant is None else str(ev.constant),
                'slope': ev.slope,
                'notes': '; '.join(ev.notes),
            }
        )
    columns = ['criterion', 'm', 'outcome', 'mode', 'exponent', 'constant', 'slope', 'notes']
    return pd.DataFrame(rows, columns=columns).astype({'m': 'Int64'})


def verdict_table(spec: CoefficientSpec, report: BatteryReport) -> str:
    """Human-readable verdict table with the conclusion.

    Parameters
    ----------
    spec : CoefficientSpec
    report : BatteryReport

    Returns
    -------
    str
    """
    frame = verdicts_frame(report).drop(columns=['notes', 'slope']).fillna('-')
    lines = [
        f'operator: {spec.name or "custom"}',
        f'conclusion: {report.conclusion}'
        + (f' [{", ".join(report.tags)}]' if report.tags else ''),
        f'supporting: {", ".join(report.supporting) or "-"}',
        '',
        frame.to_string(index=False),
    ]
    return '\n'.join(lines) + '\n'


# Spectra
# -------


def spectrum_frame(
    spec: CoefficientSpec, truncations: Sequence[int], tol: float = 1e-12
) -> pd.DataFrame:
    """Eigenvalues of every truncation with the last eigenvector coordinate.

    Columns are `N`, `index`, `lambda`, `delta_N`, `log_abs_delta_N` and `a_N_delta_N`
    (`a_N |delta_N|`, the quantity whose decay signals a genuine limit point).

    Parameters
    ----------
    spec : CoefficientSpec
    truncations : sequence of int
    tol : float, default ``1e-12``

    Returns
    -------
    DataFrame

    Examples
    --------
    >>> free = CoefficientSpec.powers(0, 0, b_sign=0)
    >>> frame = spectrum_frame(free, [1, 2])
    >>> frame[['N', 'index']].values.tolist()
    [[1, 1], [2, 1], [2, 2]]
    """
    rows = []
    for n in truncations:
        t = truncate(spec, n)
        for k, pair in enumerate(eigenpairs(t, tol), 1):
            log_gen = math.log(t.edge) + pair.log_abs_last
            rows.append(
                {
                    'N': n,
                    'index': k,
                    'lambda': pair.lam,
                    'delta_N': pair.last_coord,
                    'log_abs_delta_N': pair.log_abs_last,
                    'a_N_delta_N': math.exp(log_gen) if log_gen < 700 else math.inf,
                }
            )
    return pd.DataFrame(rows)


def interlacing_summary(
    spec: CoefficientSpec, truncations: Sequence[int], tol: float = 1e-12
) -> dict[str, bool]:
    """Interlacing of `T_N` with `T_{N+1}` for every configured `N`.

    Parameters
    ----------
    spec : CoefficientSpec
    truncations : sequence of int
    tol : float, default ``1e-12``

    Returns
    -------
    dict of str to bool
    """
    return {str(n): interlacing_check(spec, n, tol) for n in truncations}


def limits_frame(report: LimitPointReport) -> pd.DataFrame:
    """One row per candidate and supporting truncation.

    Parameters
    ----------
    report : LimitPointReport

    Returns
    -------
    DataFrame
    """
    rows = [
        {
            'candidate': i,
            'location': c.location,
            'spread': c.spread,
            'N': n,
            'a_N_delta_N': value,
            'log_a_N_delta_N': log,
        }
        for i, c in enumerate(report.candidates)
        for n, value, log in c.gencond_track
    ]
    columns = ['candidate', 'location', 'spread', 'N', 'a_N_delta_N', 'log_a_N_delta_N']
    return pd.DataFrame(rows, columns=columns)


# Continued fractions
# -------------------


def cfrac_frame(evaluations: Sequence[CFEvaluation]) -> pd.DataFrame:
    """One row per grid point of a continued fraction scan.

    Parameters
    ----------
    evaluations : sequence of CFEvaluation

    Returns
    -------
    DataFrame
    """
    rows = []
    for ev in evaluations:
        doc = ev.to_mapping()
        limit = doc.pop('limit_estimate')
        doc['re_limit'], doc['im_limit'] = limit if limit is not None else (None, None)
        rows.append(doc)
    return pd.DataFrame(rows)


# Writer
# ------


class ReportWriter:
    """Write report files under one directory in the configured formats.

    Parameters
    ----------
    directory : str or PathLike
    output_format : {'json', 'csv', 'both'}, default ``'both'``
    """

    def __init__(
        self, directory: str | os.PathLike[str], output_format: OutputFormat = 'both'
    ) -> None:
        self.directory = Path(directory)
        self.output_format = output_format
        self.written: list[Path] = []

    @property
    def wants_json(self) -> bool:  # numpydoc ignore=GL08
        return self.output_format in ('json', 'both')

    @property
    def wants_csv(self) -> bool:  # numpydoc ignore=GL08
        return self.output_format in ('csv', 'both')

    def json(self, stem: str, doc: Any) -> Path | None:
        """Write `<stem>.json` when JSON output is enabled.

        Parameters
        ----------
        stem : str
        doc : Any

        Returns
        -------
        Path or None
        """
        if not self.wants_json:
            return None
        return self._record(atomic_write_text(self.directory / f'{stem}.json', to_json(doc)))

    def csv(self, stem: str, frame: pd.DataFrame) -> Path | None:
        """Write `<stem>.csv` when CSV output is enabled.

        Parameters
        ----------
        stem : str
        frame : DataFrame

        Returns
        -------
        Path or None
        """
        if not self.wants_csv:
            return None
        return self._record(atomic_write_text(self.directory / f'{stem}.csv', to_csv(frame)))

    def text(self, name: str, text: str) -> Path:
        """Write a plain-text file regardless of the format setting.

        Parameters
        ----------
        name : str
        text : str

        Returns
        -------
        Path
        """
        return self._record(atomic_write_text(self.directory / name, text))

    def _record(self, path: Path) -> Path:
        self.written.append(path)
        return path
