"""Verification layer: coprimality checks, scans, catalog audit, decomposition."""

import pytest

from phv import (
    OrbitLimits,
    Report,
    SimpleFactor,
    VIOLATION_CODES,
    Violation,
    Weight,
    baues_decomposition_check,
    catalog_instantiate,
    catalog_list,
    chain_invariant_check,
    module,
    parse_module,
    theorem_A_check,
    theorem_B_scan,
    verify_catalog,
)

_LIM = OrbitLimits(max_steps=3, max_dim=10**6)


def test_violation_code_vocabulary():
    assert VIOLATION_CODES == (
        "SHAPE",
        "GCD-PAIR",
        "GCD-N-EXTRA",
        "GCD-DRIFT",
        "EQUAL-FACTORS",
        "DIM-MISMATCH",
        "NOT-REDUCED",
        "UNMATCHED-COMPONENT",
    )
    with pytest.raises(ValueError):
        Violation("BOGUS", "here", "detail")
    with pytest.raises(ValueError):
        Report("s", "maybe", (), {})
    with pytest.raises(ValueError):
        Report("s", "pass", (Violation("SHAPE", "x", "y"),), {})


def test_theorem_a_modes_and_stats():
    rep = theorem_A_check(catalog_instantiate("SK I-8"))
    assert rep.verdict == "pass"
    assert rep.stats["mode"] == "theorem-A"
    assert rep.stats["n"] == 6
    assert rep.stats["w_sizes"] == (2,)
    assert rep.stats["exceptional_index"] == 1
    assert rep.stats["exceptional_gcd"] == 2

    rep = theorem_A_check(catalog_instantiate("SK I-4"))
    assert rep.verdict == "pass"
    assert rep.stats["exceptional_index"] is None

    # all factors standard-acting: at most one non-coprime pair is allowed
    rep = theorem_A_check(parse_module("GL1 x SL3 x SL3 : w1 # w1"))
    assert rep.verdict == "pass"
    assert rep.stats["mode"] == "lemma-3.2"
    assert rep.stats["allowed_pair"] == (1, 2)


def test_theorem_a_failures():
    # two standard blocks sharing a factor with n
    rep = theorem_A_check(parse_module("GL1 x SL2 x SL4 x SL3 : w1 # w1 # 2w1"))
    assert rep.verdict == "fail"
    codes = {v.code for v in rep.violations}
    assert codes == {"GCD-PAIR", "GCD-N-EXTRA"}
    # two non-standard-acting factors
    rep = theorem_A_check(parse_module("GL1 x SL3 x SL4 : 2w1 # w2"))
    assert rep.verdict == "fail"
    assert [v.code for v in rep.violations] == ["SHAPE"]
    with pytest.raises(ValueError):
        theorem_A_check(parse_module("GL1 x SL2 : w1 + w1"))  # needs one summand


def test_chain_invariant_constancy():
    rep = chain_invariant_check(catalog_instantiate("SK I-8"), _LIM)
    assert rep.verdict == "pass"
    assert rep.stats["reference_gcd"] == 2
    assert set(rep.stats["member_gcds"]) == {2}
    assert not rep.stats["one_simple_seed"]

    rep = chain_invariant_check(catalog_instantiate("SK I-4"), _LIM)
    assert rep.verdict == "pass"
    assert rep.stats["reference_gcd"] == 1
    assert rep.stats["one_simple_seed"]
    assert set(rep.stats["member_gcds"]) == {1}


def test_scan_default_seeds_pass():
    rep = theorem_B_scan(OrbitLimits(max_steps=2, max_dim=10**5))
    assert rep.verdict == "pass"
    assert rep.stats["seeds"] == 12
    assert rep.stats["members_total"] == sum(rep.stats["members_per_seed"].values())


def test_scan_monotone_in_limits():
    totals = []
    for steps in (1, 2, 3):
        rep = theorem_B_scan(OrbitLimits(max_steps=steps, max_dim=10**5))
        assert rep.verdict == "pass"
        totals.append(rep.stats["members_total"])
    assert totals == sorted(totals)


def test_scan_detector_fires_on_injected_seed():
    # a seed whose first castle already repeats an existing rank-1 factor
    bad = parse_module("GL1 x SL2 x SL2 : w1 # w1")
    rep = theorem_B_scan(OrbitLimits(max_steps=2, max_dim=10**4), seeds=(("trap", bad),))
    assert rep.verdict == "fail"
    assert any(v.code == "EQUAL-FACTORS" for v in rep.violations)


def test_verify_catalog_passes():
    rep = verify_catalog()
    assert rep.verdict == "pass"
    assert rep.stats["entries"] == 19
    assert rep.stats["etale_entries"] == 13
    assert rep.stats["instances"] >= 70
    assert rep.stats["stabilizer_checks"] > 200


def _clone_entry(entry, **overrides):
    import dataclasses

    return dataclasses.replace(entry, **overrides)


def test_verify_catalog_mutation_detectors():
    entries = catalog_list()
    # mutate the cubic member to act by a square: 1 + 3 != 3
    broken = _clone_entry(
        entries[0],
        build=lambda: parse_module("GL1 x SL2 : 2w1"),
    )
    rep = verify_catalog([broken] + entries[1:])
    assert rep.verdict == "fail"
    assert any(v.code == "DIM-MISMATCH" for v in rep.violations)

    # an etale entry whose only simple factor is symplectic is malformed
    fake = _clone_entry(
        entries[0],
        id="fake C-1",
        build=lambda: module(
            2,
            [SimpleFactor("C", 1)],
            [((Weight.fundamental(0, 2),), {0}), ((Weight.fundamental(0),), {1})],
        ),
    )
    rep = verify_catalog([fake])
    assert rep.verdict == "fail"
    assert any(v.code == "SHAPE" for v in rep.violations)

    # flagging a castleable module as reduced must be caught
    lying = _clone_entry(
        entries[0],
        id="fake reducible",
        flags=frozenset({"etale", "regular", "reduced"}),
        build=lambda: parse_module("GL1 x SL2 x SL3 : 3w1 # w1"),
    )
    rep = verify_catalog([lying])
    assert any(v.code == "NOT-REDUCED" for v in rep.violations)


def test_baues_pass_on_shared_slot_family():
    rep = baues_decomposition_check(catalog_instantiate("Ks A-2", n=3), _LIM)
    assert rep.verdict == "pass"
    assert rep.stats["subsets"] == 6
    assert not rep.stats["unclassified"]


def test_baues_preconditions():
    with pytest.raises(ValueError):
        baues_decomposition_check(catalog_instantiate("KI I-2"), _LIM)  # torus 2
    with pytest.raises(ValueError):
        baues_decomposition_check(parse_module("GL1 x SL2 : w1"), _LIM)  # not etale


def test_baues_regular_component_is_flagged():
    # one proper subset of this module reduces to the cubic regular member,
    # which can never occur inside a proper decomposition
    trap = module(
        1,
        [SimpleFactor("A", 1), SimpleFactor("A", 3)],
        [
            ((Weight.fundamental(0, 3), Weight.zero), {0}),
            ((Weight.zero, Weight.fundamental(1)), {0}),
            ((Weight.zero, Weight.fundamental(0)), {0}),
            ((Weight.zero, Weight.fundamental(0)), {0}),
            ((Weight.zero, Weight.zero), {0}),
        ],
    )
    rep = baues_decomposition_check(trap, _LIM)
    assert rep.verdict == "fail"
    assert any(v.code == "UNMATCHED-COMPONENT" for v in rep.violations)


def test_report_serialization():
    rep = theorem_A_check(catalog_instantiate("SK I-8"))
    record = rep.to_dict()
    assert record["subject"].startswith("GL1 x SL3 x SL2")
    assert record["verdict"] == "pass"
    assert record["violations"] == []
    assert "n" in record["stats"]
    text = rep.text()
    assert "verdict: pass" in text
