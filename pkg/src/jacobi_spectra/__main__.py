# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Entry point for `python -m jacobi_spectra`."""

from .cli import main

main(prog_name='jacobi-spectra')
