import json

import pytest

from braids import braid_pd
from conftest import NAMED, load, suite, wide_diagram

from bnsplit.verify import (
    CHECKS,
    FAULTS,
    Report,
    check_invariance_pair,
    jones_polynomial,
    laurent_str,
    run_checks,
)
from bnsplit.diagram import parse_pd


@pytest.mark.parametrize("name", NAMED)
def test_all_checks_pass_on_named(name):
    for r in run_checks(load(name), list(CHECKS)):
        assert r.passed, r.to_json()
        assert r.checked > 0


def test_all_checks_pass_on_wide_diagram():
    reports = run_checks(wide_diagram(), ["ladder", "full", "iota"])
    assert all(r.passed for r in reports)


@pytest.mark.parametrize(
    "fault,check,name",
    [
        ("d-edge", "dsq", "trefoil"),
        ("d-edge", "dsq", "hopf"),
        ("d-edge", "dsq", "figure8"),
        ("d-split", "dsq", "figure8"),
        ("k0-no-relabel", "k0", "trefoil"),
        ("k0-no-relabel", "k0", "kink"),
        ("k-tuples", "ladder", "trefoil"),
        ("iota-no-h", "iota", "trefoil"),
        ("iota-no-h", "iota", "figure8"),
    ],
)
def test_negative_controls_fail_with_location(fault, check, name):
    (r,) = run_checks(load(name), [check], fault=fault)
    assert not r.passed
    first = r.failures[0]
    assert first["alpha"] != "" and first["labels"] != ""
    assert r.failure_count >= len(r.failures)


def test_dsq_failure_names_a_face():
    (r,) = run_checks(load("trefoil"), ["dsq"], fault="d-edge")
    assert r.failures[0]["face"] == [0, 1]


def test_k_tuples_caught_on_wide_diagram():
    (r,) = run_checks(wide_diagram(), ["ladder"], fault="k-tuples")
    assert not r.passed


def test_homology_checks_do_not_crash_on_broken_complex():
    reports = run_checks(load("trefoil"), ["split", "jones"], fault="d-edge")
    assert [r.passed for r in reports] == [False, False]


def test_report_json_shape():
    (r,) = run_checks(load("trefoil"), ["dsq"], fault="d-edge")
    data = json.loads(r.to_json())
    assert {"check", "diagram", "status", "failures"} <= set(data)
    assert data["status"] == "fail"
    assert {"alpha", "labels", "lhs", "rhs"} <= set(data["failures"][0])
    assert r.summary().startswith("FAIL dsq")


def test_report_keeps_at_most_five():
    r = Report("x", "d")
    for k in range(9):
        r.record(alpha=str(k), labels="")
    assert r.failure_count == 9 and len(r.failures) == 5


class TestJones:
    def test_unknot(self):
        assert laurent_str(jones_polynomial(load("unknot"))) == "q^-1 + q"

    def test_two_loops(self):
        assert laurent_str(jones_polynomial(parse_pd("O O"))) == "q^-2 + 2 + q^2"

    def test_left_trefoil(self):
        # (q + q^-1)(q^-2 + q^-6 - q^-8), expanded by hand
        assert jones_polynomial(load("trefoil")) == {-9: -1, -5: 1, -3: 1, -1: 1}

    def test_kink_equals_unknot(self):
        assert jones_polynomial(load("kink")) == jones_polynomial(load("unknot"))

    def test_rendering(self):
        assert laurent_str({}) == "0"
        assert laurent_str({-9: -1, 0: 2, 1: -3}) == "-q^-9 + 2 - 3q"


class TestInvariance:
    def test_unknot_vs_kink(self):
        assert check_invariance_pair(load("unknot"), load("kink")).passed

    def test_trefoil_vs_stabilized(self):
        stab = braid_pd([-1, -1, -1, 2], 3, name="trefoil-stabilized")
        assert stab.n == 4
        assert check_invariance_pair(load("trefoil"), stab).passed

    def test_trefoil_vs_second_move(self):
        r2 = braid_pd([-1, -1, -1, 1, -1], 2, name="trefoil-r2")
        assert r2.n == 5
        assert check_invariance_pair(load("trefoil"), r2).passed

    def test_figure_eight_two_ways(self):
        braid = braid_pd([1, -2, 1, -2], 3, name="figure8-braid")
        assert check_invariance_pair(load("figure8"), braid).passed

    def test_trefoil_vs_figure_eight_differ(self):
        r = check_invariance_pair(load("trefoil"), load("figure8"))
        assert not r.passed and r.failure_count == 2


def test_suite_is_green():
    for d in suite():
        for r in run_checks(d, ["dsq", "k0", "ladder"]):
            assert r.passed, r.summary()


def test_faults_registry():
    assert set(FAULTS) == {"d-edge", "d-split", "k0-no-relabel", "k-tuples", "iota-no-h"}
