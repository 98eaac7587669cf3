from __future__ import annotations

import pytest

from qlogic.config import RunConfig
from qlogic.errors import UnknownSuite, ValidationError
from qlogic.report import all_passed, render
from qlogic.suites import SUITES, run_suite

FAST = RunConfig(cap_elements=128, samples=30)


def verdicts(reports):
    return {r.check: r.verdict for r in reports}


def test_rational_space_suite_passes():
    reports = run_suite("rational-space", None, FAST)
    assert all_passed(reports), [r.check for r in reports if not r.passed]
    assert {"ortholattice", "orthomodular", "covering", "center", "extension-state",
            "real-embedding"} <= set(verdicts(reports))


def test_rational_space_suite_on_the_plane():
    assert all_passed(run_suite("section5.4", "q2", FAST))


def test_rational_space_suite_needs_rationals():
    with pytest.raises(ValidationError):
        run_suite("section5.4", "qi3", FAST)


def test_aliases_run_the_same_checks():
    assert render(run_suite("theorem2")) == render(run_suite("orthogonality-postulate"))
    assert render(run_suite("corollary1")) == render(run_suite("ac-lattice"))


def test_theorem2_suite_on_half_triple_fails_with_sequence():
    reports = run_suite("theorem2")
    strict = reports[0]
    assert strict.verdict == "fail" and strict.witnesses[0]["length"] == 3


def test_theorem2_suite_on_partition_passes():
    assert all_passed(run_suite("theorem2", "boolean_partition"))


def test_swap_suite_passes_on_basis_atoms():
    assert all_passed(run_suite("lemma-swap"))


def test_norm_suite():
    assert all_passed(run_suite("section5.3", None, FAST))


def test_filter_suite():
    assert all_passed(run_suite("filters"))


def test_polytope_suite_reports_mo2_corner():
    v = verdicts(run_suite("polytope", "mo2"))
    assert v["state-polytope"] == "pass" and v["jauch-piron"] == "fail"
    assert all_passed(run_suite("polytope", "bool3"))


def test_ac_lattice_on_hexagon_fails():
    v = verdicts(run_suite("corollary1", "o6"))
    assert v["orthomodular"] == "fail"


def test_ac_lattice_on_a_fragment():
    reports = run_suite("ac-lattice", "fragment:q3", FAST)
    assert verdicts(reports)["orthomodular"] == "pass"


def test_seed_changes_samples_but_not_verdicts():
    a = run_suite("symmetry", None, RunConfig(seed=1))
    b = run_suite("symmetry", None, RunConfig(seed=2))
    assert verdicts(a)["rho-equals-lambda-squared"] == verdicts(b)["rho-equals-lambda-squared"] == "pass"


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("section9")


def test_every_suite_is_deterministic():
    for name in SUITES:
        if name in ("section5.4", "rational-space"):
            continue
        assert render(run_suite(name, None, FAST), "machine") == render(run_suite(name, None, FAST), "machine")
