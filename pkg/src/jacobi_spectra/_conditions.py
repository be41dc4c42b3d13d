# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Multi-index sums `G+`, `G`, `G~` and the battery of self-adjointness criteria.

Every criterion here is a sufficient condition. A verdict of ``Fails`` means that the hypothesis of
the criterion is not met; it never means that the operator is not self-adjoint.
"""

from __future__ import annotations

import enum
import logging
import math
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Literal, TypeAlias

import numpy as np
import numpy.typing as npt

from ._coeffseq import CoefficientSpec, TabulatedRule
from ._exponents import (
    AsymptoticProfile,
    ExponentSum,
    build_profile,
    growth_laws,
    strip_sparse,
    symbolic_exponent_of,
)
from ._multiindex import MAX_ORDER, Variant, generate

logger = logging.getLogger(__name__)

FloatArray: TypeAlias = npt.NDArray[np.float64]
IntArray: TypeAlias = npt.NDArray[np.int64]
SumKind: TypeAlias = Literal['G_plus', 'G_full', 'G_tilde']
NumericRange: TypeAlias = tuple[int, int, int] | range

DEFAULT_NUMERIC_STOP = 1000
_SAMPLE_POINTS = 25


class Criterion(enum.Enum):
    """Identifier of a self-adjointness criterion."""

    B_M = 'B_m'
    C_M = 'C_m'
    C_M_LIMINF = 'C_m_liminf'
    D_M = 'D_m'
    G_M_LIMIT = 'G_m_limit'
    CAR = 'CAR'
    DW = 'DW'
    JN = 'JN'
    CJ = 'CJ'
    WEAK = 'WEAK'


class Outcome(enum.Enum):
    """Outcome of one criterion."""

    HOLDS = 'Holds'
    FAILS = 'Fails'
    INCONCLUSIVE = 'Inconclusive'


class Mode(enum.Enum):
    """How an outcome was reached."""

    SYMBOLIC = 'Symbolic'
    NUMERIC = 'Numeric'


def _json_number(x: float) -> float | str:
    return float(x) if math.isfinite(x) else str(x)


@dataclass
class Evidence:
    """Supporting data of a verdict.

    Symbolic verdicts carry the exact dominant `exponent` (and `constant` at exponent ties) with
    the per-class dominant terms. Numeric verdicts carry sampled values, a fitted log-log `slope`
    and partial sums.
    """

    exponent: Fraction | None = None
    constant: Fraction | None = None
    per_class: list[tuple[Fraction, Fraction]] | None = None
    samples: list[tuple[int, float]] | None = None
    slope: float | None = None
    partial_sums: list[tuple[int, float]] | None = None
    notes: list[str] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize with rationals written as ``'p/q'`` strings.

        Returns
        -------
        dict
        """
        return {
            'exponent': None if self.exponent is None else str(self.exponent),
            'constant': None if self.constant is None else str(self.constant),
            'per_class': (
                None
                if self.per_class is None
                else [{'exponent': str(e), 'constant': str(c)} for e, c in self.per_class]
            ),
            'samples': (
                None if self.samples is None else [[n, _json_number(v)] for n, v in self.samples]
            ),
            'slope': None if self.slope is None else _json_number(self.slope),
            'partial_sums': (
                None
                if self.partial_sums is None
                else [[n, _json_number(v)] for n, v in self.partial_sums]
            ),
            'notes': list(self.notes),
            'extra': {
                k: _json_number(v) if isinstance(v, float) else v for k, v in self.extra.items()
            },
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of one criterion, with how it was reached and why.

    Parameters
    ----------
    criterion : Criterion
    m : int or None
        Order of the `m`-condition; ``None`` for the classical criteria.
    outcome : Outcome
    mode : Mode
    evidence : Evidence
    """

    criterion: Criterion
    m: int | None
    outcome: Outcome
    mode: Mode
    evidence: Evidence

    @property
    def label(self) -> str:
        """Short name such as ``'B_3'`` or ``'CAR'``.

        Returns
        -------
        str
        """
        name = self.criterion.value
        return name if self.m is None else name.replace('_m', f'_{self.m}', 1)

    @property
    def holds(self) -> bool:
        """Whether the criterion holds.

        Returns
        -------
        bool
        """
        return self.outcome is Outcome.HOLDS

    def to_mapping(self) -> dict[str, Any]:
        """Serialize into the criteria report format.

        Returns
        -------
        dict
        """
        return {
            'criterion': self.criterion.value,
            'm': self.m,
            'outcome': self.outcome.value,
            'mode': self.mode.value,
            'evidence': self.evidence.to_mapping(),
        }


@dataclass(frozen=True)
class RatioFactors:
    """Coefficient ratios at one index `n`.

    `gamma_minus = a_{n-1}/|b_n|`, `gamma_plus = a_n/|b_n|`, and, at a supplied `lam`,
    `c_abs_minus = a_{n-1}/|lam - b_n|` and `c_abs_plus = a_n/|lam - b_n|`. Vanishing
    denominators give ``inf``.
    """

    n: int
    gamma_minus: float
    gamma_plus: float
    c_abs_minus: float | None = None
    c_abs_plus: float | None = None


def ratio_factors(spec: CoefficientSpec, n: int, lam: float | None = None) -> RatioFactors:
    """Ratios `gamma-`, `gamma+` and optionally `|c-|`, `|c+|` at index `n`.

    Parameters
    ----------
    spec : CoefficientSpec
    n : int
    lam : float, optional

    Returns
    -------
    RatioFactors

    Examples
    --------
    >>> f = ratio_factors(CoefficientSpec.powers(1, 2), 10, lam=0.0)
    >>> f.gamma_minus, f.c_abs_plus
    (0.09, 0.1)
    """
    c_minus = c_plus = None
    if lam is not None:
        den = abs(lam - spec.eval_b(n))
        a_prev = spec.eval_a(n - 1) if n > 1 else 0.0
        a_cur = spec.eval_a(n)
        c_minus = a_prev / den if den else (math.inf if a_prev else 0.0)
        c_plus = a_cur / den if den else math.inf
    return RatioFactors(n, spec.gamma_minus(n), spec.gamma_plus(n), c_minus, c_plus)


# Numeric multi-index sums
# ------------------------


def _index_limit(spec: CoefficientSpec) -> int | None:
    limits = [
        rule.table.max_index
        for rule in (spec.a_rule, spec.b_rule)
        if isinstance(rule, TabulatedRule)
    ]
    return min(limits) if limits else None


def _gamma_arrays(spec: CoefficientSpec, lo: int, hi: int) -> tuple[FloatArray, FloatArray]:
    # gamma+(i), gamma-(i) for i in lo..hi, zero for i <= 0 (a_k = 0 for k <= 0).
    gp = np.fromiter(
        (spec.gamma_plus(i) if i >= 1 else 0.0 for i in range(lo, hi + 1)), dtype=np.float64
    )
    gm = np.fromiter(
        (spec.gamma_minus(i) if i >= 1 else 0.0 for i in range(lo, hi + 1)), dtype=np.float64
    )
    return gp, gm


def _mul(vals: FloatArray, factor: FloatArray, flags: npt.NDArray[np.bool_]) -> FloatArray:
    # 0 * inf := inf, flagged
    with np.errstate(invalid='ignore', over='ignore'):
        out = vals * factor
    bad = np.isnan(out)
    if bad.any():
        out[bad] = np.inf
        flags |= bad
    return out


def _walk_sums(
    kind: SumKind, spec: CoefficientSpec, m: int, ns: IntArray
) -> tuple[FloatArray, npt.NDArray[np.bool_]]:
    lo = int(ns.min()) - m - 1
    hi = int(ns.max()) + m + 1
    gp, gm = _gamma_arrays(spec, lo, hi)
    flags = np.zeros(ns.shape, dtype=np.bool_)
    state: dict[int, FloatArray] = {0: np.ones(ns.shape)}

    def add(target: dict[int, FloatArray], key: int, vals: FloatArray) -> None:
        target[key] = target[key] + vals if key in target else vals

    for _ in range(m):
        nxt: dict[int, FloatArray] = {}
        for pos, vals in state.items():
            if kind == 'G_tilde':
                # pos is u = j_{m+1} - j_s, walked backwards from 0
                add(nxt, pos - 1, _mul(vals, gp[ns + pos - 1 - lo] ** 2, flags))
                add(nxt, pos + 1, _mul(vals, gm[ns + pos + 1 - lo] ** 2, flags))
                continue
            # pos is j_s; branch A multiplies gamma+(n - j_s), branch B gamma-(n - j_s)
            positive = kind == 'G_plus'
            if not positive or pos >= 1:
                add(nxt, pos - 1, _mul(vals, gp[ns - pos - lo], flags))
            if not positive or pos >= 0:
                add(nxt, pos + 1, _mul(vals, gm[ns - pos - lo], flags))
        state = nxt
    total = np.zeros(ns.shape)
    for vals in state.values():
        total = total + vals
    return total, flags


@lru_cache(maxsize=32)
def _plan(kind: SumKind, m: int) -> tuple[IntArray, npt.NDArray[np.bool_]]:
    # Index offsets relative to n and branch-A masks for every multi-index term.
    variant = {'G_plus': Variant.I_PLUS, 'G_full': Variant.I, 'G_tilde': Variant.I_HAT}[kind]
    pairs = generate(variant, m)
    offsets = np.empty((len(pairs), m), dtype=np.int64)
    is_a = np.empty((len(pairs), m), dtype=np.bool_)
    for row, pair in enumerate(pairs):
        walk = pair.full_j
        for s in range(m):
            offsets[row, s] = walk[m] - walk[s] if kind == 'G_tilde' else -walk[s]
            is_a[row, s] = pair.k[s] == walk[s]
    return offsets, is_a


def _enumerated_sum(kind: SumKind, spec: CoefficientSpec, m: int, n: int) -> tuple[float, bool]:
    offsets, is_a = _plan(kind, m)
    lo = n - m - 1
    gp, gm = _gamma_arrays(spec, lo, n + m + 1)
    idx = n + offsets - lo
    factors = np.where(is_a, gp[idx], gm[idx])
    if kind == 'G_tilde':
        factors = factors**2
    has_zero = (factors == 0).any(axis=1)
    has_inf = np.isinf(factors).any(axis=1)
    with np.errstate(invalid='ignore', over='ignore'):
        terms = np.prod(factors, axis=1)
    clash = has_zero & has_inf
    terms[clash] = np.inf
    return float(terms.sum()), bool(clash.any())


@dataclass(frozen=True)
class GValue:
    """Value of a multi-index sum and whether the `0 * inf := inf` rule was applied."""

    value: float
    zero_times_inf: bool = False


def _check_args(kind: SumKind, m: int, n: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError('`m` should be a positive integer')
    if kind == 'G_tilde':
        if n < 1:
            raise ValueError('`n` should be a positive integer')
    elif n <= m:
        raise ValueError(f'`n` should exceed `m`; got n={n}, m={m}')


def evaluate_G(
    kind: SumKind,
    spec: CoefficientSpec,
    m: int,
    n: int,
    *,
    method: Literal['walk', 'enumerate'] = 'walk',
) -> GValue:
    """Evaluate one of the multi-index sums at a single `n`.

    Parameters
    ----------
    kind : {'G_plus', 'G_full', 'G_tilde'}
    spec : CoefficientSpec
    m : int
    n : int
    method : {'walk', 'enumerate'}, default ``'walk'``
        ``'walk'`` sums over walk endpoints; ``'enumerate'`` multiplies out every term of the
        multi-index set.

    Returns
    -------
    GValue

    Raises
    ------
    ValueError
        If `n` is out of range for `kind`.
    """
    _check_args(kind, m, n)
    if method == 'enumerate':
        value, flagged = _enumerated_sum(kind, spec, m, n)
        return GValue(value, flagged)
    values, flags = _walk_sums(kind, spec, m, np.array([n], dtype=np.int64))
    return GValue(float(values[0]), bool(flags[0]))


def G_plus(spec: CoefficientSpec, m: int, n: int) -> float:
    """Sum over `I_m+` of the products of `a_{n-k_s} / |b_{n-j_s}|`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    n : int
        Should exceed `m`.

    Returns
    -------
    float
        ``inf`` if a touched `b` vanishes.

    Examples
    --------
    >>> G_plus(CoefficientSpec.powers(1, 2), 1, 10)
    0.09
    >>> G_plus(CoefficientSpec.powers(0, 0), 2, 5)
    2.0
    """
    return evaluate_G('G_plus', spec, m, n).value


def G_full(spec: CoefficientSpec, m: int, n: int) -> float:
    """Sum over `I_m` of the products of `a_{n-k_s} / |b_{n-j_s}|`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    n : int
        Should exceed `m`.

    Returns
    -------
    float

    Examples
    --------
    >>> G_full(CoefficientSpec.powers(1, 0), 1, 5)
    9.0
    """
    return evaluate_G('G_full', spec, m, n).value


def G_tilde(spec: CoefficientSpec, m: int, n: int) -> float:
    """Sum over `I^_m` of the products of `a^2_{n+j_{m+1}-k_s} / b^2_{n+j_{m+1}-j_s}`.

    Terms with a numerator index at most zero vanish.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    n : int

    Returns
    -------
    float

    Examples
    --------
    >>> spec = CoefficientSpec.powers(0, 0, b_constant=2)
    >>> G_tilde(spec, 1, 3), G_tilde(spec, 2, 5), G_tilde(spec, 1, 1)
    (0.5, 0.25, 0.25)
    """
    return evaluate_G('G_tilde', spec, m, n).value


def sample_G(
    kind: SumKind, spec: CoefficientSpec, m: int, ns: Sequence[int] | IntArray
) -> tuple[FloatArray, npt.NDArray[np.bool_]]:
    """Evaluate a multi-index sum at many indices at once.

    Parameters
    ----------
    kind : {'G_plus', 'G_full', 'G_tilde'}
    spec : CoefficientSpec
    m : int
    ns : sequence of int

    Returns
    -------
    values : numpy.ndarray
    zero_times_inf : numpy.ndarray of bool
    """
    arr = np.asarray(ns, dtype=np.int64)
    for n in (int(arr.min()), int(arr.max())):
        _check_args(kind, m, n)
    return _walk_sums(kind, spec, m, arr)


def recursion_check_G_tilde(spec: CoefficientSpec, m: int, n: int, *, rtol: float = 1e-12) -> bool:
    """Check `G~_{m+1,n} = g+^2_{n-1} G~_{m,n-1} + g-^2_{n+1} G~_{m,n+1}`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    n : int
        At least 2.
    rtol : float, default ``1e-12``

    Returns
    -------
    bool

    Examples
    --------
    >>> recursion_check_G_tilde(CoefficientSpec.powers(0, 0, b_constant=2), 1, 5)
    True
    """
    if n < 2:
        raise ValueError('`n` should be at least 2')
    lhs = G_tilde(spec, m + 1, n)
    rhs = spec.gamma_plus(n - 1) ** 2 * G_tilde(spec, m, n - 1) + spec.gamma_minus(
        n + 1
    ) ** 2 * G_tilde(spec, m, n + 1)
    if math.isinf(lhs) or math.isinf(rhs):
        return lhs == rhs
    return math.isclose(lhs, rhs, rel_tol=rtol, abs_tol=0.0)


# Verdict helpers
# ---------------


def _numeric_ns(
    spec: CoefficientSpec, m: int, numeric_range: NumericRange | None, reach: int
) -> IntArray:
    if numeric_range is None:
        start, stop, stride = m + 2, DEFAULT_NUMERIC_STOP, 1
    elif isinstance(numeric_range, range):
        start, stop, stride = numeric_range.start, numeric_range.stop - 1, numeric_range.step
    else:
        start, stop, stride = numeric_range
    start = max(start, m + 1, 2)
    limit = _index_limit(spec)
    if limit is not None:
        stop = min(stop, limit - reach)
    ns = np.arange(start, stop + 1, max(stride, 1), dtype=np.int64)
    if ns.size == 0:
        raise ValueError('`numeric_range` leaves no admissible index')
    return ns


def _thin(ns: IntArray, values: FloatArray) -> list[tuple[int, float]]:
    picks = np.unique(np.linspace(0, ns.size - 1, min(_SAMPLE_POINTS, ns.size)).astype(int))
    return [(int(ns[i]), float(values[i])) for i in picks]


def _slope(ns: IntArray, values: FloatArray) -> float | None:
    mask = np.isfinite(values) & (values > 0)
    if mask.sum() < 3:
        return None
    slope, _ = np.polyfit(np.log(ns[mask]), np.log(values[mask]), 1)
    return float(slope)


def _tail(values: FloatArray) -> FloatArray:
    return values[-max(1, values.size // 4) :]


def _numeric(
    criterion: Criterion,
    m: int | None,
    ns: IntArray,
    values: FloatArray,
    *,
    series: bool = False,
    notes: Sequence[str] = (),
    extra: dict[str, Any] | None = None,
) -> Verdict:
    evidence = Evidence(
        samples=_thin(ns, values),
        slope=_slope(ns, values),
        notes=[*notes, 'numeric diagnostic; limits are not certified by finite samples'],
        extra=dict(extra or {}),
    )
    if series:
        evidence.partial_sums = _thin(ns, np.cumsum(np.where(np.isfinite(values), values, 0.0)))
    return Verdict(criterion, m, Outcome.INCONCLUSIVE, Mode.NUMERIC, evidence)


def _symbolic(
    criterion: Criterion,
    m: int | None,
    outcome: Outcome,
    *,
    exponent: Fraction | None = None,
    constant: Fraction | None = None,
    per_class: list[tuple[Fraction, Fraction]] | None = None,
    notes: Sequence[str] = (),
    extra: dict[str, Any] | None = None,
) -> Verdict:
    evidence = Evidence(
        exponent=exponent,
        constant=constant,
        per_class=per_class,
        notes=list(notes),
        extra=dict(extra or {}),
    )
    return Verdict(criterion, m, outcome, Mode.SYMBOLIC, evidence)


def _square_neighbourhood(ns: IntArray, m: int) -> npt.NDArray[np.bool_]:
    # n with dist(n, {k^2}) < m
    roots = np.floor(np.sqrt(ns.astype(np.float64))).astype(np.int64)
    below = ns - roots**2
    above = (roots + 1) ** 2 - ns
    return np.minimum(below, above) < max(m, 1)


def _log_a(spec: CoefficientSpec, ns: IntArray) -> FloatArray:
    return np.fromiter((spec.sample('a', int(n))[2] for n in ns), dtype=np.float64)


def _log_abs_b(spec: CoefficientSpec, ns: IntArray) -> FloatArray:
    return np.fromiter((spec.sample('b', int(n))[2] for n in ns), dtype=np.float64)


def _exp(logs: FloatArray) -> FloatArray:
    with np.errstate(over='ignore'):
        return np.exp(logs)


def _profile(spec: CoefficientSpec, profile: AsymptoticProfile | None) -> AsymptoticProfile | None:
    return profile if profile is not None else build_profile(spec)


_SPARSE_B_NOTE = 'b has a perfect-square override: |b_n| -> 0 along the squares'
_SPARSE_A_NOTE = 'a has a perfect-square override: a_n -> 0 along the squares'
_SUPERPOLY_NOTE = 'a_n grows faster than any power of n'


def _zero_b_note(profile: AsymptoticProfile) -> str:
    return f'b vanishes identically on residue classes {list(profile.zero_b_classes)}'


# m-conditions
# ------------


def _a_times(spec: CoefficientSpec, ns: IntArray, values: FloatArray) -> FloatArray:
    with np.errstate(invalid='ignore', over='ignore'):
        out = _exp(_log_a(spec, ns)) * values
    return np.where(np.isnan(out), np.inf, out)


def check_Bm(
    spec: CoefficientSpec,
    m: int,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Strong criterion: `|b_n| -> inf` and `a_n G+_{m,n} -> 0`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    prof = _profile(spec, profile)
    crit = Criterion.B_M
    if prof is not None and prof.sparse_b is not None:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_SPARSE_B_NOTE])
    if prof is not None and prof.zero_b_classes:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_zero_b_note(prof)])
    if prof is None or prof.sparse_a is not None:
        ns = _numeric_ns(spec, m, numeric_range, m + 2)
        values = _a_times(spec, ns, sample_G('G_plus', spec, m, ns)[0])
        notes = [] if prof is None else [_SPARSE_A_NOTE]
        return _numeric(crit, m, ns, values, notes=notes)
    if not prof.b_diverges():
        return _symbolic(crit, m, Outcome.FAILS, notes=['|b_n| does not diverge on every class'])
    if prof.a_superpoly:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_SUPERPOLY_NOTE])
    es = symbolic_exponent_of('G_plus_times_a', spec, m, profile=prof)
    assert es is not None
    top = es.max_exponent()
    outcome = Outcome.HOLDS if top < 0 else Outcome.FAILS
    return _symbolic(
        crit,
        m,
        outcome,
        exponent=top,
        constant=es.limsup_constant(),
        per_class=es.dominants(),
    )


def check_Cm(
    spec: CoefficientSpec,
    m: int,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Carleman-type criterion: `sum 1/(a_n G_{m,n})` diverges.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    prof = _profile(spec, profile)
    crit = Criterion.C_M
    if prof is not None and prof.sparse_b is not None:
        return _on_complement(crit, spec, m, numeric_range, 'G_full_times_a', Fraction(1))
    if prof is None or prof.sparse_a is not None or prof.zero_b_classes:
        ns = _numeric_ns(spec, m, numeric_range, m + 2)
        values = _a_times(spec, ns, sample_G('G_full', spec, m, ns)[0])
        with np.errstate(divide='ignore'):
            terms = 1.0 / values
        notes = []
        if prof is not None:
            notes.append(_SPARSE_A_NOTE if prof.sparse_a is not None else _zero_b_note(prof))
        return _numeric(crit, m, ns, terms, series=True, notes=notes)
    if prof.a_superpoly:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_SUPERPOLY_NOTE])
    es = symbolic_exponent_of('G_full_times_a', spec, m, profile=prof)
    assert es is not None
    dominants = es.dominants()
    lowest = min(e for e, _ in dominants)
    outcome = Outcome.HOLDS if lowest <= 1 else Outcome.FAILS
    return _symbolic(crit, m, outcome, exponent=lowest, per_class=dominants)


def _on_complement(
    crit: Criterion,
    spec: CoefficientSpec,
    m: int,
    numeric_range: NumericRange | None,
    kind: Literal['G_full_times_a', 'DW'],
    threshold: Fraction,
) -> Verdict:
    # Decide a divergence criterion away from the perfect squares of a b-override.
    stripped = strip_sparse(spec)
    prof = build_profile(stripped)
    reach = m + 2
    ns = _numeric_ns(spec, m, numeric_range, reach)
    keep = ~_square_neighbourhood(ns, m)
    kept = ns[keep]
    if kind == 'DW':
        terms = _dw_terms(spec, kept)
    else:
        with np.errstate(divide='ignore'):
            terms = 1.0 / _a_times(spec, kept, sample_G('G_full', spec, m, kept)[0])
    notes = [
        _SPARSE_B_NOTE,
        f'decided on the complement of the squares neighbourhood of radius {m}',
    ]
    partial = _thin(kept, np.cumsum(np.where(np.isfinite(terms), terms, 0.0))) if kept.size else []
    if prof is None or prof.zero_b_classes or prof.a_superpoly:
        evidence = Evidence(partial_sums=partial, notes=notes, samples=_thin(kept, terms))
        m_out = None if kind == 'DW' else m
        return Verdict(crit, m_out, Outcome.INCONCLUSIVE, Mode.NUMERIC, evidence)
    if kind == 'DW':
        per_class = _dw_exponents(prof)
        best = max(e for e, _ in per_class)
        outcome = Outcome.HOLDS if best >= -threshold else Outcome.FAILS
        verdict = _symbolic(crit, None, outcome, exponent=best, per_class=per_class, notes=notes)
    else:
        es = symbolic_exponent_of('G_full_times_a', stripped, m, profile=prof)
        assert es is not None
        dominants = es.dominants()
        lowest = min(e for e, _ in dominants)
        outcome = Outcome.HOLDS if lowest <= threshold else Outcome.FAILS
        verdict = _symbolic(crit, m, outcome, exponent=lowest, per_class=dominants, notes=notes)
    verdict.evidence.partial_sums = partial
    return verdict


def check_liminf_Gm(
    spec: CoefficientSpec,
    m: int,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Corollary of the Carleman-type criterion: `liminf a_n G_{m,n} < inf`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    prof = _profile(spec, profile)
    crit = Criterion.C_M_LIMINF
    spec_used = spec
    notes: list[str] = []
    if prof is not None and prof.sparse_b is not None:
        spec_used = strip_sparse(spec)
        prof = build_profile(spec_used)
        notes.append(_SPARSE_B_NOTE)
        notes.append('decided along the indices away from the squares')
    if prof is None or prof.sparse_a is not None or prof.zero_b_classes:
        ns = _numeric_ns(spec, m, numeric_range, m + 2)
        values = _a_times(spec, ns, sample_G('G_full', spec, m, ns)[0])
        extra = {'tail_min': float(np.min(_tail(values)))}
        return _numeric(crit, m, ns, values, notes=notes, extra=extra)
    if prof.a_superpoly:
        return _symbolic(crit, m, Outcome.FAILS, notes=[*notes, _SUPERPOLY_NOTE])
    es = symbolic_exponent_of('G_full_times_a', spec_used, m, profile=prof)
    assert es is not None
    dominants = es.dominants()
    lowest = min(e for e, _ in dominants)
    outcome = Outcome.HOLDS if lowest <= 0 else Outcome.FAILS
    return _symbolic(crit, m, outcome, exponent=lowest, per_class=dominants, notes=notes)


def _limsup_verdict(
    crit: Criterion, m: int | None, es: ExponentSum, threshold: Fraction, notes: Sequence[str] = ()
) -> Verdict:
    # limsup < threshold, with exact constant comparison at exponent zero
    top = es.max_exponent()
    constant = None
    if top < 0:
        outcome = Outcome.HOLDS
    elif top > 0:
        outcome = Outcome.FAILS
    else:
        constant = es.limsup_constant()
        if constant < threshold:
            outcome = Outcome.HOLDS
        elif constant > threshold:
            outcome = Outcome.FAILS
        else:
            outcome = Outcome.INCONCLUSIVE
    return _symbolic(
        crit,
        m,
        outcome,
        exponent=top,
        constant=constant,
        per_class=es.dominants(),
        notes=notes,
        extra={'threshold': str(threshold)},
    )


def check_Dm(
    spec: CoefficientSpec,
    m: int,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Janas-Naboko-type criterion: `limsup G~_{m,n} < 2**-m`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    prof = _profile(spec, profile)
    crit = Criterion.D_M
    threshold = Fraction(1, 2**m)
    if prof is not None and prof.sparse_b is not None:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_SPARSE_B_NOTE])
    if prof is not None and prof.zero_b_classes:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_zero_b_note(prof)])
    if prof is None or prof.sparse_a is not None:
        ns = _numeric_ns(spec, m, numeric_range, m + 2)
        values = sample_G('G_tilde', spec, m, ns)[0]
        below = values < float(threshold)
        # first n from which every sampled value stays below the threshold
        n0 = None
        if below[-1]:
            failing = np.flatnonzero(~below)
            n0 = int(ns[failing[-1] + 1]) if failing.size else int(ns[0])
        extra = {
            'threshold': str(threshold),
            'tail_max': float(np.max(_tail(values))),
            'finite_n_satisfied': n0 is not None,
            'n0': n0,
        }
        notes = [] if prof is None else [_SPARSE_A_NOTE]
        return _numeric(crit, m, ns, values, notes=notes, extra=extra)
    es = symbolic_exponent_of('G_tilde', spec, m, profile=prof)
    assert es is not None
    return _limsup_verdict(crit, m, es, threshold)


def check_limit_Gm_zero(
    spec: CoefficientSpec,
    m: int,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Criterion `G_{m,n} -> 0`.

    Parameters
    ----------
    spec : CoefficientSpec
    m : int
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    prof = _profile(spec, profile)
    crit = Criterion.G_M_LIMIT
    if prof is not None and prof.sparse_b is not None:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_SPARSE_B_NOTE])
    if prof is not None and prof.zero_b_classes:
        return _symbolic(crit, m, Outcome.FAILS, notes=[_zero_b_note(prof)])
    if prof is None or prof.sparse_a is not None:
        ns = _numeric_ns(spec, m, numeric_range, m + 2)
        values = sample_G('G_full', spec, m, ns)[0]
        notes = [] if prof is None else [_SPARSE_A_NOTE]
        return _numeric(crit, m, ns, values, notes=notes)
    es = symbolic_exponent_of('G_full', spec, m, profile=prof)
    assert es is not None
    top = es.max_exponent()
    outcome = Outcome.HOLDS if top < 0 else Outcome.FAILS
    return _symbolic(
        crit, m, outcome, exponent=top, constant=es.limsup_constant(), per_class=es.dominants()
    )


# Classical criteria
# ------------------


def check_weak(
    spec: CoefficientSpec,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Weak criterion: `a_n, a_{n-1} = o(|b_n|**r)` for some `r < 1`.

    Classes are aggregated by requiring one `r` for all of them.

    Parameters
    ----------
    spec : CoefficientSpec
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    prof = _profile(spec, profile)
    crit = Criterion.WEAK
    if prof is not None and prof.sparse_b is not None:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_SPARSE_B_NOTE])
    if prof is not None and prof.zero_b_classes:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_zero_b_note(prof)])
    if prof is None or prof.sparse_a is not None or prof.a is None or prof.b is None:
        ns = _numeric_ns(spec, 1, numeric_range, 1)
        log_a = np.maximum(_log_a(spec, ns), _log_a(spec, ns - 1))
        log_b = _log_abs_b(spec, ns)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratios = np.where(log_b > 0, log_a / log_b, np.inf)
        notes = []
        if prof is not None and prof.a_superpoly:
            notes.append(_SUPERPOLY_NOTE)
        return _numeric(crit, None, ns, ratios, notes=notes)
    period = prof.period
    needed: list[tuple[Fraction, Fraction]] = []
    holds = True
    for r in range(period):
        beta = prof.b[r].exponent
        alpha = max(prof.a[r].exponent, prof.a[(r - 1) % period].exponent)
        needed.append((alpha, beta))
        if not (beta > 0 and alpha < beta):
            holds = False
    r_min = max(alpha / beta for alpha, beta in needed) if holds else None
    return _symbolic(
        crit,
        None,
        Outcome.HOLDS if holds else Outcome.FAILS,
        exponent=r_min,
        per_class=needed,
        notes=['per_class lists (max a-exponent of a_n, a_{n-1}; b-exponent)'],
        extra={'r_min': None if r_min is None else str(r_min)},
    )


def check_carleman(
    spec: CoefficientSpec,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Carleman criterion: `sum 1/a_n` diverges.

    Parameters
    ----------
    spec : CoefficientSpec
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict

    Examples
    --------
    >>> check_carleman(CoefficientSpec.powers(1, 0)).outcome
    <Outcome.HOLDS: 'Holds'>
    """
    crit = Criterion.CAR
    prof = _profile(spec, profile)
    if prof is not None and prof.sparse_a is not None:
        return _symbolic(crit, None, Outcome.HOLDS, notes=[_SPARSE_A_NOTE])
    laws = growth_laws(spec, 'a')
    if laws == 'superpoly':
        return _symbolic(crit, None, Outcome.FAILS, notes=[_SUPERPOLY_NOTE])
    if laws is None:
        ns = _numeric_ns(spec, 1, numeric_range, 0)
        terms = _exp(-_log_a(spec, ns))
        return _numeric(crit, None, ns, terms, series=True)
    per_class = [(law.exponent, law.constant) for law in laws]
    lowest = min(e for e, _ in per_class)
    outcome = Outcome.HOLDS if lowest <= 1 else Outcome.FAILS
    return _symbolic(crit, None, outcome, exponent=lowest, per_class=per_class)


def _dw_terms(spec: CoefficientSpec, ns: IntArray) -> FloatArray:
    logs = _log_abs_b(spec, ns) - _log_a(spec, ns) - _log_a(spec, ns - 1)
    return _exp(logs)


def _dw_exponents(prof: AsymptoticProfile) -> list[tuple[Fraction, Fraction]]:
    assert prof.a is not None and prof.b is not None
    out = []
    period = prof.period
    for r in range(period):
        b = prof.b[r]
        if b.sign == 0:
            continue
        a_cur, a_prev = prof.a[r], prof.a[(r - 1) % period]
        out.append(
            (
                b.exponent - a_cur.exponent - a_prev.exponent,
                b.constant / (a_cur.constant * a_prev.constant),
            )
        )
    return out


def check_dennis_wall(
    spec: CoefficientSpec,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Dennis-Wall criterion: `sum |b_n| / (a_n a_{n-1})` diverges.

    Parameters
    ----------
    spec : CoefficientSpec
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    crit = Criterion.DW
    prof = _profile(spec, profile)
    if prof is not None and prof.sparse_a is not None:
        return _symbolic(crit, None, Outcome.HOLDS, notes=[_SPARSE_A_NOTE])
    if prof is not None and prof.sparse_b is not None:
        return _on_complement(crit, spec, 1, numeric_range, 'DW', Fraction(1))
    if prof is None:
        ns = _numeric_ns(spec, 1, numeric_range, 0)
        return _numeric(crit, None, ns, _dw_terms(spec, ns), series=True)
    if prof.a_superpoly:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_SUPERPOLY_NOTE])
    per_class = _dw_exponents(prof)
    notes = [_zero_b_note(prof)] if prof.zero_b_classes else []
    if not per_class:
        return _symbolic(crit, None, Outcome.FAILS, notes=notes)
    best = max(e for e, _ in per_class)
    outcome = Outcome.HOLDS if best >= -1 else Outcome.FAILS
    return _symbolic(crit, None, outcome, exponent=best, per_class=per_class, notes=notes)


def _ratio_sum(prof: AsymptoticProfile, squared: bool) -> ExponentSum:
    classes = []
    for r in range(prof.period):
        terms: dict[Fraction, Fraction] = {}
        for law in (prof.gamma_plus[r], prof.gamma_minus[r]):
            assert law is not None
            law = law.squared() if squared else law
            terms[law.exponent] = terms.get(law.exponent, Fraction(0)) + law.constant
        classes.append(terms)
    return ExponentSum(classes)


def check_janas_naboko(
    spec: CoefficientSpec,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Janas-Naboko criterion: `limsup (a_n**2 + a_{n-1}**2) / b_n**2 < 1/2`.

    Whether `|b_n|` diverges, needed for discreteness of the spectrum, is recorded in the evidence.

    Parameters
    ----------
    spec : CoefficientSpec
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    crit = Criterion.JN
    prof = _profile(spec, profile)
    if prof is not None and prof.sparse_b is not None:
        ns = _numeric_ns(spec, 1, numeric_range, 1)
        on_squares = ns[_square_neighbourhood(ns, 1)]
        logs = [
            math.log(spec.gamma_plus(int(n)) ** 2 + spec.gamma_minus(int(n)) ** 2)
            if math.isfinite(spec.gamma_plus(int(n)))
            else math.inf
            for n in on_squares
        ]
        return _symbolic(
            crit,
            None,
            Outcome.FAILS,
            notes=[_SPARSE_B_NOTE],
            extra={'log_ratio_on_squares': [[int(n), v] for n, v in zip(on_squares, logs)]},
        )
    if prof is not None and prof.zero_b_classes:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_zero_b_note(prof)])
    if prof is None or prof.sparse_a is not None:
        ns = _numeric_ns(spec, 1, numeric_range, 1)
        gp, gm = _gamma_arrays(spec, int(ns[0]), int(ns[-1]))
        idx = ns - ns[0]
        values = gp[idx] ** 2 + gm[idx] ** 2
        extra = {'threshold': '1/2', 'tail_max': float(np.max(_tail(values)))}
        return _numeric(crit, None, ns, values, extra=extra)
    verdict = _limsup_verdict(crit, None, _ratio_sum(prof, squared=True), Fraction(1, 2))
    verdict.evidence.extra['b_diverges'] = prof.b_diverges()
    return verdict


def check_cojuhari_janas(
    spec: CoefficientSpec,
    numeric_range: NumericRange | None = None,
    *,
    profile: AsymptoticProfile | None = None,
) -> Verdict:
    """Cojuhari-Janas criterion.

    Requires `b_n - a_n - a_{n-1} > 0` eventually, `a_n -> inf`, and divergence of consecutive
    sums of `b_n - a_n - a_{n-1}`. With positive `b`, the first condition reads
    `limsup (gamma+_n + gamma-_n) < 1`, which together with `a_n -> inf` implies the last.

    Parameters
    ----------
    spec : CoefficientSpec
    numeric_range : (start, stop, stride) or range, optional
    profile : AsymptoticProfile, optional

    Returns
    -------
    Verdict
    """
    crit = Criterion.CJ
    prof = _profile(spec, profile)
    if prof is not None and prof.sparse_b is not None:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_SPARSE_B_NOTE])
    if prof is not None and prof.sparse_a is not None:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_SPARSE_A_NOTE])
    if prof is None:
        ns = _numeric_ns(spec, 1, numeric_range, 1)
        a = _exp(_log_a(spec, ns))
        a_prev = _exp(_log_a(spec, ns - 1))
        b = spec.b_array(int(ns[0]), int(ns[-1]))[ns - ns[0]]
        beta = b - a - a_prev
        extra = {
            'negative_in_tail': int(np.sum(_tail(beta) <= 0)),
            'a_slope': _slope(ns, a),
        }
        return _numeric(crit, None, ns, beta, extra=extra)
    if prof.zero_b_classes:
        return _symbolic(crit, None, Outcome.FAILS, notes=[_zero_b_note(prof)])
    if any(s < 0 for s in prof.b_signs):
        return _symbolic(crit, None, Outcome.FAILS, notes=['b_n is negative on some class'])
    if not prof.a_diverges():
        return _symbolic(crit, None, Outcome.FAILS, notes=['a_n does not diverge on every class'])
    verdict = _limsup_verdict(crit, None, _ratio_sum(prof, squared=False), Fraction(1))
    verdict.evidence.notes.append('exponent refers to gamma+_n + gamma-_n against threshold 1')
    return verdict


# Battery
# -------


@dataclass(frozen=True)
class BatteryReport:
    """Verdicts of the full battery and the aggregated conclusion.

    `conclusion` is ``'SELF_ADJOINT'`` when some criterion holds, else ``'UNDECIDED'``. The tag
    ``'LAMBDA_EQUALS_SIGMA'`` is added when a strong or weak criterion holds.
    """

    verdicts: tuple[Verdict, ...]
    conclusion: Literal['SELF_ADJOINT', 'UNDECIDED']
    tags: tuple[str, ...] = ()
    supporting: tuple[str, ...] = ()

    def __iter__(self) -> Iterator[Verdict]:
        return iter(self.verdicts)

    def __len__(self) -> int:
        return len(self.verdicts)

    def get(self, label: str) -> Verdict:
        """Verdict with a given label such as ``'D_2'``.

        Parameters
        ----------
        label : str

        Returns
        -------
        Verdict

        Raises
        ------
        KeyError
            If no verdict has that label.
        """
        for verdict in self.verdicts:
            if verdict.label == label:
                return verdict
        raise KeyError(label)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize into the criteria report format.

        Returns
        -------
        dict
        """
        return {
            'conclusion': self.conclusion,
            'tags': list(self.tags),
            'supporting': list(self.supporting),
            'verdicts': [v.to_mapping() for v in self.verdicts],
        }


def run_battery(
    spec: CoefficientSpec,
    m_max: int,
    numeric_range: NumericRange | None = None,
    *,
    threads: int = 1,
    cap: int = MAX_ORDER,
) -> BatteryReport:
    """Run every criterion for `m = 1..m_max` plus the classical and weak criteria.

    Parameters
    ----------
    spec : CoefficientSpec
    m_max : int
    numeric_range : (start, stop, stride) or range, optional
    threads : int, default ``1``
        Worker threads; the verdict order does not depend on it.
    cap : int, default ``MAX_ORDER``

    Returns
    -------
    BatteryReport

    Raises
    ------
    ValueError
        If `m_max` lies outside 1..`cap` or `threads` < 1.
    """
    if isinstance(m_max, bool) or not isinstance(m_max, int) or not 1 <= m_max <= cap:
        raise ValueError(f'`m_max` should lie in 1..{cap}')
    if threads < 1:
        raise ValueError('`threads` should be a positive integer')
    profile = build_profile(spec)
    jobs: list[Callable[[], Verdict]] = []
    for m in range(1, m_max + 1):
        for check in (check_Bm, check_Cm, check_liminf_Gm, check_Dm, check_limit_Gm_zero):
            jobs.append(lambda check=check, m=m: check(spec, m, numeric_range, profile=profile))
    for classical in (
        check_carleman,
        check_dennis_wall,
        check_janas_naboko,
        check_cojuhari_janas,
        check_weak,
    ):
        jobs.append(lambda classical=classical: classical(spec, numeric_range, profile=profile))

    if threads == 1:
        verdicts = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(lambda job: job(), jobs))

    supporting = tuple(v.label for v in verdicts if v.holds)
    tags = ()
    if any(v.holds and v.criterion in (Criterion.B_M, Criterion.WEAK) for v in verdicts):
        tags = ('LAMBDA_EQUALS_SIGMA',)
    conclusion: Literal['SELF_ADJOINT', 'UNDECIDED'] = (
        'SELF_ADJOINT' if supporting else 'UNDECIDED'
    )
    logger.info(
        'battery for %s: %s via %s', spec.name or 'spec', conclusion, ', '.join(supporting) or '-'
    )
    return BatteryReport(tuple(verdicts), conclusion, tags, supporting)
