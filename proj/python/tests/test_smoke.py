import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import cftkit


def minimal_weight(m, r, s):
    p, q = m + 2, m + 3
    return Fraction((q * r - p * s) ** 2 - 1, 4 * p * q)


def test_sl2_modular_data():
    data = cftkit.modular_data("sl2", 10)
    assert data["c"] == "5/2"
    assert len(data["labels"]) == 11
    assert data["h"][1] == "1/16"


def test_minimal_modular_data():
    data = cftkit.modular_data("minimal", 1)
    assert data["h"] == ["0", "1/16", "1/2"]


@given(st.integers(min_value=1, max_value=12))
@settings(max_examples=12, deadline=None)
def test_minimal_weights_match_formula(m):
    data = cftkit.modular_data("minimal", m)
    for label, h in zip(data["labels"], data["h"]):
        r, s = (int(x) for x in label.strip("()").split(","))
        assert Fraction(h) == minimal_weight(m, r, s)


def test_enumerate_sl2_level_10():
    tags = {x["tag"] for x in cftkit.enumerate_invariants("sl2", 10)}
    assert tags == {"A", "D_odd", "E6"}


@given(st.integers(min_value=1, max_value=16))
@settings(max_examples=16, deadline=None)
def test_enumeration_matches_table(k):
    found = sorted(json.dumps(x["matrix"]) for x in cftkit.enumerate_invariants("sl2", k))
    table = sorted(json.dumps(x["matrix"]) for x in cftkit.expected_invariants("sl2", k))
    assert found == table


def test_verify_and_classify():
    e7 = next(x for x in cftkit.expected_invariants("sl2", 16) if x["tag"] == "E7")
    assert cftkit.verify_invariant("sl2", 16, e7["matrix"])["passed"]
    assert cftkit.classify_invariant("sl2", 16, e7["matrix"]) == "E7"
    bad = [row[:] for row in e7["matrix"]]
    bad[0][1] = 1
    report = cftkit.verify_invariant("sl2", 16, bad)
    assert not report["passed"] and report["failed_axiom"]


def test_gko():
    assert cftkit.verify_gko(1, 0, 0, 8)["passed"]
    rule = cftkit.gko_decomposition(1, 0, 0)
    assert rule["pairs"]


def test_classify_preunitary():
    result = cftkit.classify_preunitary("25/26", "(1,1),(7,1)")
    assert result["accepted"] and result["voa"]["tag"] == "E6"
    with pytest.raises(ValueError):
        cftkit.classify_preunitary("3/4", "(1,1)")


def test_extensions():
    assert cftkit.conformal_embedding(10, "B2")["passed"]
    mirror = cftkit.mirror_extension(9, [0, 6])
    assert {s["label"] for s in mirror["summands"]} == {"(1,1)", "(1,7)"}
    assert cftkit.classify_affine(10, [0, 6])["accepted"]


def test_usage_errors():
    with pytest.raises(ValueError):
        cftkit.modular_data("sl2", -1)
    with pytest.raises(ValueError):
        cftkit.modular_data("e8", 1)


def test_cli_entry():
    code, out, err = cftkit.run_cli(["mdata", "minimal", "--m", "1", "--json"])
    assert code == 0
    assert json.loads(out)["h"] == ["0", "1/16", "1/2"]
    assert cftkit.run_cli(["mdata", "sl2", "--level", "-1"])[0] == 2
