# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

from typing import Any

from typing_extensions import assert_type

from jacobi_spectra import (
    AnalysisConfig,
    BatteryReport,
    CoefficientSpec,
    G_plus,
    GValue,
    Outcome,
    Verdict,
    build_preset,
    check_Bm,
    check_carleman,
    evaluate_G,
    run_battery,
)

spec = build_preset('ex-B1')
verdict = check_Bm(spec, 3)
assert_type(verdict, Verdict)
assert_type(check_carleman(spec), Verdict)
assert_type(verdict.outcome, Outcome)
assert_type(verdict.holds, bool)
assert_type(verdict.label, str)
assert_type(verdict.to_mapping(), dict[str, Any])

assert_type(G_plus(spec, 2, 10), float)
assert_type(evaluate_G('G_tilde', spec, 1, 10), GValue)

report = run_battery(spec, 3)
assert_type(report, BatteryReport)
assert_type(report.get('B_3'), Verdict)
for item in report:
    assert_type(item, Verdict)

config = AnalysisConfig(spec=spec, m_max=3)
assert_type(config, AnalysisConfig)
assert_type(config.replace(m_max=4), AnalysisConfig)
assert_type(config.require_spec(), CoefficientSpec)
