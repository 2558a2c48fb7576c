from __future__ import annotations

import json

import pytest

from m0nkappa import faults, verify
from m0nkappa.chowq import partitions_sp, relation_generators
from m0nkappa.errors import InputError


def failed(reports):
    return [r for r in reports if not r.passed]


def test_default_suite_small():
    reports = verify.run_suite(6)
    assert verify.all_passed(reports)
    names = [r.check for r in reports]
    assert names == sorted(names, key=list(verify.CHECKS).index)


def test_reports_are_byte_identical_across_runs_and_threads():
    a = [r.dumps() for r in verify.run_suite(6)]
    b = [r.dumps() for r in verify.run_suite(6)]
    c = [r.dumps() for r in verify.run_suite(6, threads=4)]
    assert a == b == c
    for line in a:
        data = json.loads(line)
        assert set(data) == {"check", "params", "status", "vacuous", "witness"}


def test_dimension_formula_examples():
    by_cell = {(r.params["n"], r.params["d"]): r for r in verify.check_dimension_formula(6)}
    assert by_cell[(5, 1)].witness["dim_Q"] == 5
    assert by_cell[(6, 1)].witness["dim_Q"] == 16 == by_cell[(6, 1)].witness["closed_form"]
    assert by_cell[(4, 1)].witness["dim_Q"] == 1


def test_theorem_root_example():
    by_cell = {(r.params["n"], r.params["d"]): r for r in verify.check_theorem_root(7)}
    assert by_cell[(4, 1)].passed
    assert by_cell[(7, 2)].witness == {"shape": [22, 22], "rank": 22}


def test_exact_sequence_boundary_cell():
    (r,) = [r for r in verify.check_exact_sequences(5) if r.params == {"n": 4, "d": 1}]
    assert r.passed
    assert r.witness["dims_Q"] == [1, 1, 0]
    assert r.witness["zero_spaces"] == ["Q_target"]
    assert r.witness["rank_pullback"] == 1


def test_commuting_squares_cover_both_cases_and_flag_vacuous_cells():
    reports = verify.check_commuting_squares(6)
    assert verify.all_passed(reports)
    assert all(r.params["d"] >= -1 for r in reports)
    assert sum(r.witness["right_case1"] for r in reports) > 0
    assert sum(r.witness["right_case2"] for r in reports) > 0
    vac = [r for r in reports if r.vacuous]
    assert vac and all(r.params["d"] == r.params["n"] - 2 for r in vac)


def test_surjectivity_examples():
    by = {(r.params["map"], r.params["n"]): r for r in verify.check_surjectivity_lemmas(5)}
    assert by[("odd", 3)].witness["rank"] == 4
    assert by[("phi_-1", 4)].witness["rank"] == 7
    assert by[("aux_squares", 2)].passed


def test_strata_consistency():
    reports = verify.check_strata_consistency(7)
    assert verify.all_passed(reports)
    assert [r.witness["num_trees"] for r in reports] == [4, 26, 236, 2752]


@pytest.mark.parametrize("kind", faults.KINDS)
def test_fault_injection_fails_with_witness(kind):
    bad = failed(verify.run_suite(6, fault=faults.Fault(kind)))
    assert bad
    for r in bad:
        assert r.witness.get("failures") or r.witness.get("error")


@pytest.mark.parametrize("n,d", [(5, 1), (6, 1), (6, 2)])
def test_every_single_relation_sign_is_detected(n, d):
    gens = relation_generators(n, d)
    for index in range(0, len(gens), max(1, len(gens) // 12)):
        fault = faults.Fault("relation-sign", n=n, d=d, index=index)
        assert failed(verify.run_suite(6, ["dimension_formula", "relation_properties"], fault=fault)), index


@pytest.mark.parametrize("n,d", [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3)])
def test_every_single_pairing_entry_is_detected(n, d):
    checks = ["theorem_root", "relation_properties", "base_cases"]
    for index in range(len(partitions_sp(n, d))):
        fault = faults.Fault("pairing-entry", n=n, d=d, index=index)
        assert failed(verify.run_suite(6, checks, fault=fault)), index


def test_fault_does_not_leak_out_of_the_run():
    verify.run_suite(5, ["theorem_root"], fault=faults.Fault("pairing-entry"), threads=3)
    assert faults.active() is None
    assert verify.all_passed(verify.run_suite(5, ["theorem_root"]))


def test_bad_arguments():
    with pytest.raises(InputError):
        verify.run_suite(6, ["nope"])
    with pytest.raises(InputError):
        verify.run_suite(3)
    with pytest.raises(InputError):
        faults.Fault("bit-flip")


def test_summary_counts():
    reports = verify.run_suite(5, ["base_cases", "commuting_squares"])
    rows = {r["check"]: r for r in verify.summarize(reports)}
    assert rows["base_cases"] == {"check": "base_cases", "cells": 6, "pass": 6, "fail": 0, "vacuous": 0}
    assert rows["commuting_squares"]["vacuous"] == 3


def test_crashing_cell_is_a_failure(monkeypatch):
    def boom(**params):
        raise RuntimeError("kaput")

    monkeypatch.setitem(verify.CHECKS, "base_cases", verify.Check(verify.CHECKS["base_cases"].cells, boom))
    reports = verify.run_suite(4, ["base_cases"])
    assert all(r.status == "fail" and "kaput" in r.witness["error"] for r in reports)


@pytest.mark.slow
def test_full_suite_at_n8():
    reports = verify.run_suite(8, threads=4)
    assert verify.all_passed(reports), [r.dumps() for r in failed(reports)][:3]
