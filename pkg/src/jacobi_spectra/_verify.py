# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Seeded cross-module identity suites backing the `verify` subcommand."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._cfrac import approximant, resolvent_11
from ._coeffseq import CoefficientSpec
from ._conditions import SumKind, evaluate_G, recursion_check_G_tilde
from ._exceptions import DegeneratePivotError, NumericalError
from ._orthopoly import cd0_check, cd_check, zeros_p
from ._spectra import (
    EigenPair,
    F_bound,
    Truncation,
    delta_expansion,
    eigenpairs,
    eigenvalues,
    interlacing_check,
    residual_split,
    truncate,
)

logger = logging.getLogger(__name__)

_MAX_REPORTED = 10
_SUM_ORDERS: tuple[tuple[SumKind, int], ...] = (('G_plus', 4), ('G_full', 2), ('G_tilde', 2))


@dataclass
class SuiteResult:
    """Outcome of one identity suite.

    `failures` holds one message per failed comparison, naming the identity and its inputs.
    """

    name: str
    checked: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether every comparison passed.

        Returns
        -------
        bool
        """
        return not self.failures

    def record(self, ok: bool, message: str) -> None:
        """Count one comparison, keeping `message` when it failed.

        Parameters
        ----------
        ok : bool
        message : str
        """
        self.checked += 1
        if not ok:
            self.failures.append(message)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize, truncating the failure list.

        Returns
        -------
        dict
        """
        return {
            'suite': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'skipped': self.skipped,
            'failed': len(self.failures),
            'failures': self.failures[:_MAX_REPORTED],
        }


@dataclass(frozen=True)
class VerificationReport:
    """Results of every suite for one seed and tolerance."""

    seed: int
    rtol: float
    suites: tuple[SuiteResult, ...]

    @property
    def passed(self) -> bool:
        """Whether every suite passed.

        Returns
        -------
        bool
        """
        return all(s.passed for s in self.suites)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize for the JSON report.

        Returns
        -------
        dict
        """
        return {
            'seed': self.seed,
            'rtol': self.rtol,
            'passed': self.passed,
            'suites': [s.to_mapping() for s in self.suites],
        }


def random_spec(rng: np.random.Generator, n_max: int) -> CoefficientSpec:
    """Tabulated spec with `a_n = exp(U(-1, 1))` and `b_n ~ N(0, 2)` for `n = 1..n_max`.

    Parameters
    ----------
    rng : numpy.random.Generator
    n_max : int

    Returns
    -------
    CoefficientSpec

    Examples
    --------
    >>> spec = random_spec(np.random.default_rng(0), 5)
    >>> spec.a_rule.table.max_index
    5
    """
    a = np.exp(rng.uniform(-1.0, 1.0, n_max))
    b = rng.normal(0.0, 2.0, n_max)
    return CoefficientSpec.tabulated(a.tolist(), b.tolist(), name='random')


def _close(x: float, y: float, rtol: float, scale: float | None = None) -> bool:
    ref = max(abs(x), abs(y)) if scale is None else scale
    return abs(x - y) <= rtol * ref


def _corrupted_pairs(t: Truncation) -> list[EigenPair]:
    # Eigenvectors of J_N with the sign of a_{N-1} flipped; same eigenvalues, wrong last row.
    dense = t.to_dense()
    n = t.N
    dense[n - 1, n - 2] = dense[n - 2, n - 1] = -dense[n - 1, n - 2]
    lams, vecs = np.linalg.eigh(dense)
    pairs = []
    for lam, vec in zip(lams, vecs.T):
        vec = vec if vec[0] >= 0 else -vec
        last = float(vec[-1])
        log_last = math.log(abs(last)) if last else -math.inf
        pairs.append(EigenPair(float(lam), vec, last, log_last))
    return pairs


def expansion_suite(
    rng: np.random.Generator, count: int, rtol: float, *, corrupt: bool = False
) -> SuiteResult:
    """`delta_N` equals its expansion over `I^_m+` for every eigenpair and `m <= min(5, N)`.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
        Number of random truncations, with `N` drawn from 2..12.
    rtol : float
    corrupt : bool, default ``False``
        Feed eigenvectors of a sign-corrupted matrix instead (negative control).

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('expansion' + (' (negative control)' if corrupt else ''))
    for case in range(count):
        n = int(rng.integers(2, 13))
        t = truncate(random_spec(rng, n), n)
        pairs = _corrupted_pairs(t) if corrupt else eigenpairs(t)
        for k, pair in enumerate(pairs, 1):
            for m in range(1, min(5, n) + 1):
                try:
                    value = delta_expansion(t, pair, m)
                    bound = F_bound(t, pair.lam, m)
                except DegeneratePivotError:
                    result.skipped += 1
                    continue
                scale = max(abs(pair.last_coord), bound * float(np.max(np.abs(pair.vector))))
                result.record(
                    math.isfinite(value) and _close(value, pair.last_coord, rtol, scale),
                    f'delta expansion: case {case}, N={n}, eigenpair {k}, m={m}: '
                    f'{value:.17e} != {pair.last_coord:.17e}',
                )
    return result


def bound_suite(rng: np.random.Generator, count: int, rtol: float) -> SuiteResult:
    """`|delta_N| <= F_{m,N}(lambda_N)` for every eigenpair and `m <= min(5, N)`.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
    rtol : float

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('delta bound')
    for case in range(count):
        n = int(rng.integers(2, 13))
        t = truncate(random_spec(rng, n), n)
        for k, pair in enumerate(eigenpairs(t), 1):
            for m in range(0, min(5, n) + 1):
                try:
                    bound = F_bound(t, pair.lam, m)
                except DegeneratePivotError:
                    result.skipped += 1
                    continue
                result.record(
                    abs(pair.last_coord) <= bound * (1 + rtol),
                    f'delta bound: case {case}, N={n}, eigenpair {k}, m={m}: '
                    f'|{pair.last_coord:.17e}| > {bound:.17e}',
                )
    return result


def residual_suite(rng: np.random.Generator, count: int, rtol: float) -> SuiteResult:
    """Residual split against a brute-force `||(T - lam) x_N||**2` with `T_{N+1}`.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
    rtol : float

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('residual split')
    for case in range(count):
        n = int(rng.integers(2, 13))
        t = truncate(random_spec(rng, n), n)
        big = np.zeros((n + 1, n + 1))
        big[:n, :n] = t.to_dense()
        big[n, n - 1] = big[n - 1, n] = t.edge
        for k, pair in enumerate(eigenpairs(t), 1):
            target = pair.lam + float(rng.uniform(-1.0, 1.0))
            x = np.append(pair.vector, 0.0)
            brute = float(np.sum(((big - target * np.eye(n + 1)) @ x) ** 2))
            split = residual_split(t, pair, target)
            result.record(
                _close(split.total, brute, rtol),
                f'residual split: case {case}, N={n}, eigenpair {k}: '
                f'{split.total:.17e} != {brute:.17e}',
            )
    return result


def spectrum_suite(rng: np.random.Generator, count: int, n_max: int, rtol: float) -> SuiteResult:
    """Eigenvalues against a dense solver, zeros of `p_{N+1}`, and interlacing.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
        Number of random specs.
    n_max : int
        Largest truncation order.
    rtol : float

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('eigenvalues and interlacing')
    for case in range(count):
        spec = random_spec(rng, n_max + 2)
        for n in range(1, n_max + 1):
            t = truncate(spec, n)
            ours = eigenvalues(t)
            dense = np.linalg.eigvalsh(t.to_dense())
            worst = float(np.max(np.abs(ours - dense)))
            result.record(
                worst <= rtol * t.scale,
                f'dense eigenvalues: case {case}, N={n}: deviation {worst:.3e}',
            )
            try:
                zeros_p(spec, n)
                result.record(True, '')
            except NumericalError as exc:
                result.record(False, f'zeros of p_{n + 1}: case {case}: {exc}')
            result.record(
                interlacing_check(spec, n), f'interlacing: case {case}, N={n} vs N={n + 1}'
            )
    return result


def christoffel_darboux_suite(
    rng: np.random.Generator, count: int, n_max: int
) -> SuiteResult:
    """Christoffel-Darboux identity and its lower bound at `z = i` for `n <= n_max`.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
    n_max : int

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('Christoffel-Darboux')
    for case in range(count):
        spec = random_spec(rng, n_max + 2)
        for n in range(1, n_max + 1):
            check = cd_check(spec, n)
            result.record(
                check.ok, f'CD identity: case {case}, n={n}: {check.lhs:.17e} != {check.rhs:.17e}'
            )
            result.record(cd0_check(spec, n), f'CD lower bound: case {case}, n={n}')
    return result


def resolvent_suite(
    rng: np.random.Generator, count: int, n_max: int, points: int, rtol: float
) -> SuiteResult:
    """Approximants of the continued fraction against the truncated resolvent entry.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
    n_max : int
    points : int
        Off-axis `lam` values per spec.
    rtol : float

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('approximant vs resolvent')
    for case in range(count):
        spec = random_spec(rng, n_max + 1)
        for _ in range(points):
            n = int(rng.integers(1, n_max + 1))
            lam = complex(rng.uniform(-5.0, 5.0), rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 3.0))
            ours = approximant(spec, n, lam)
            ref = resolvent_11(truncate(spec, n), lam)
            ok = abs(ours - ref) <= rtol * max(abs(ours), abs(ref))
            result.record(ok, f'resolvent: case {case}, N={n}, lambda={lam}: {ours} != {ref}')
    return result


def formula_suite(rng: np.random.Generator, count: int, rtol: float) -> SuiteResult:
    """Walk evaluation of the multi-index sums against explicit enumeration, and the
    recursion of `G~`.

    Parameters
    ----------
    rng : numpy.random.Generator
    count : int
    rtol : float

    Returns
    -------
    SuiteResult
    """
    result = SuiteResult('multi-index sums')
    for case in range(count):
        spec = random_spec(rng, 40)
        for kind, m_top in _SUM_ORDERS:
            for m in range(1, m_top + 1):
                n = int(rng.integers(m + 2, 31))
                walk = evaluate_G(kind, spec, m, n).value
                enum = evaluate_G(kind, spec, m, n, method='enumerate').value
                if math.isinf(walk) or math.isinf(enum):
                    ok = walk == enum
                else:
                    ok = _close(walk, enum, rtol)
                result.record(ok, f'{kind}: case {case}, m={m}, n={n}: {walk:.17e} != {enum:.17e}')
        n = int(rng.integers(2, 30))
        result.record(
            recursion_check_G_tilde(spec, 1, n, rtol=rtol),
            f'G_tilde recursion: case {case}, m=1, n={n}',
        )
    return result


def run_verification(
    seed: int = 0,
    rtol: float = 1e-10,
    *,
    negative_control: bool = False,
    scale: int = 1,
) -> VerificationReport:
    """Run every identity suite with a seeded generator.

    Parameters
    ----------
    seed : int, default ``0``
    rtol : float, default ``1e-10``
        Relative tolerance of the floating-point identities; ``0`` makes them fail.
    negative_control : bool, default ``False``
        Replace the expansion suite by its sign-corrupted negative control.
    scale : int, default ``1``
        Multiplier of the number of random cases.

    Returns
    -------
    VerificationReport

    Examples
    --------
    >>> run_verification(seed=1, scale=1).passed
    True
    """
    if rtol < 0:
        raise ValueError('`rtol` should be non-negative')
    rng = np.random.default_rng(seed)
    suites: list[Callable[[], SuiteResult]] = [
        lambda: expansion_suite(rng, 10 * scale, rtol, corrupt=negative_control),
        lambda: bound_suite(rng, 10 * scale, rtol),
        lambda: residual_suite(rng, 10 * scale, rtol),
        lambda: spectrum_suite(rng, 2 * scale, 20, rtol),
        lambda: christoffel_darboux_suite(rng, 2 * scale, 100),
        lambda: resolvent_suite(rng, 2 * scale, 60, 10, rtol),
        lambda: formula_suite(rng, 5 * scale, rtol),
    ]
    results = []
    for run in suites:
        res = run()
        level = logging.INFO if res.passed else logging.WARNING
        logger.log(
            level,
            'suite %s: %d checked, %d skipped, %d failed',
            res.name,
            res.checked,
            res.skipped,
            len(res.failures),
        )
        for message in res.failures[:_MAX_REPORTED]:
            logger.warning('  %s', message)
        results.append(res)
    return VerificationReport(seed, rtol, tuple(results))
