# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Exception types raised by the package."""

from __future__ import annotations


class CoefficientDomainError(ValueError):
    """A coefficient sequence was evaluated outside its domain or described invalidly.

    Raised when `a_n` is not strictly positive, a value is not finite, an index is out of range,
    or a coefficient document cannot be parsed.
    """


class DegeneratePivotError(ValueError):
    """A pivot `lambda - b_{N-j}` vanishes to working tolerance.

    Parameters
    ----------
    j : int
        Offset of the offending diagonal entry from the last row of the truncation.
    message : str
    """

    def __init__(self, j: int, message: str) -> None:
        super().__init__(message)
        self.j = j


class NumericalError(ArithmeticError):
    """A computed quantity failed its accuracy check."""


class ConfigError(ValueError):
    """An analysis configuration is invalid."""
