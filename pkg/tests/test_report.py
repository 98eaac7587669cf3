from __future__ import annotations

import json
from fractions import Fraction

import pytest

from qlogic.report import CheckReport, all_passed, describe, render
from qlogic.scalars import quadratic


def test_fail_needs_a_witness():
    with pytest.raises(ValueError):
        CheckReport("c", "t", "fail")


def test_truncated_needs_cap_metadata():
    with pytest.raises(ValueError):
        CheckReport("c", "t", "truncated", stats={"elements": 3})
    assert CheckReport("c", "t", "truncated", stats={"cap": 3}).verdict == "truncated"


def test_unknown_verdict():
    with pytest.raises(ValueError):
        CheckReport("c", "t", "maybe")


def test_from_witnesses():
    assert CheckReport.from_witnesses("c", "t", []).passed
    assert CheckReport.from_witnesses("c", "t", [{"a": 1}]).verdict == "fail"


def test_machine_rendering_is_plain_json_without_timing():
    K = quadratic(2)
    r = CheckReport("c", "t", "fail", [{"x": K(1, 1), "q": Fraction(1, 2)}], {"n": 3}, timing=0.5)
    line = render([r], "machine").strip()
    d = json.loads(line)
    assert d["witnesses"] == [{"x": "1 + rt", "q": "1/2"}]
    assert "timing" not in d
    assert r.to_dict(timing=True)["timing"] == 0.5


def test_text_rendering():
    r = CheckReport("covering", "mo2", "fail", [{"a": "a"}] * 7, {"pairs": 24}, ["n"])
    text = r.to_text()
    assert text.splitlines()[0] == "[FAIL     ] covering on mo2"
    assert "... 2 more witnesses" in text and "note: n" in text


def test_all_passed():
    ok = CheckReport("a", "t")
    trunc = CheckReport("b", "t", "truncated", stats={"cap": 1})
    assert all_passed([ok]) and not all_passed([ok, trunc])


def test_describe_is_stable():
    assert describe((Fraction(1, 2), 3, None, 0.25)) == "(1/2, 3, None, 0.25)"
    assert describe({"k": [1, 2]}) == "{k: (1, 2)}"
