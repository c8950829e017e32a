# mtsc: metamorphic testing of smart contracts
# Copyright 2026 The mtsc Authors.
# SPDX-License-Identifier: Apache-2.0

import pathlib

import pytest

import mtsc

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def test_reentrant_withdraw_is_flagged():
    vulnerable, report = mtsc.check(CORPUS / "simple_dao.scenario.json", n=50)
    assert vulnerable
    verdict = report["verdicts"][0]
    assert "Reentrancy" in verdict["categories"]
    assert {v["mr"] for v in verdict["violations"]} >= {"MR1.1", "MR2.2"}


def test_transfer_contract_is_clean():
    vulnerable, report = mtsc.check(CORPUS / "safe_transfer.scenario.json", n=50)
    assert not vulnerable
    assert report["verdicts"][0]["violations"] == []


def test_bench_matches_labels():
    report = mtsc.bench(CORPUS, n=50, jobs=2)
    assert report["metrics"]["total"]["tpr"] == "100.00%"
    assert report["metrics"]["total"]["fdr"] == "0.00%"


def test_estimate_nop():
    report = mtsc.estimate(CORPUS / "nop.scenario.json", mr1_actors=["EOA"])
    assert report["estimates"] == [{"actor": "EOA", "value": 21100, "trials": 1, "converged": True}]


def test_bad_input_raises():
    with pytest.raises(mtsc.MtscError):
        mtsc.check(CORPUS / "missing.scenario.json")
    with pytest.raises(mtsc.MtscError):
        mtsc.check(CORPUS / "nop.scenario.json", n=0)


def test_source_helpers():
    text = mtsc.format_source("contract A { uint x; fn f() { x = 1; } }")
    assert mtsc.format_source(text) == text
    assert mtsc.validate_source("contract A { fn f() { y = 1; } }")[0][0] == "UndeclaredName"
    with pytest.raises(ValueError):
        mtsc.format_source("contract {")


def test_metrics_helpers():
    assert mtsc.format_percent(mtsc.tpr(30, 8)) == "78.95%"
    assert mtsc.format_percent(mtsc.fdr(38, 29)) == "43.28%"
    assert mtsc.tpr(0, 0) is None
    assert mtsc.format_percent(None) == "n/a"
    assert "block_gas_limit = 30000000" in mtsc.default_schedule()
