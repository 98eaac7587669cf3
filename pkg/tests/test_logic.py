from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic import hermitian as hg
from qlogic import logic as lg
from qlogic.errors import MalformedTable
from qlogic.hermitian import HermitianSpace
from qlogic.scalars import QQ

from .oracles import join_from_order, meet_from_order
from .strategies import vectors

Q3 = HermitianSpace(QQ, 3)
TABLES = [lg.boolean(1), lg.boolean(2), lg.boolean(3), lg.mo2(), lg.o6()]


@pytest.mark.parametrize("L", TABLES, ids=lambda L: L.name)
def test_meet_and_join_agree_with_order_oracle(L):
    for x in L.elements:
        for y in L.elements:
            assert L.meet(x, y) == meet_from_order(L.elements, L.leq, x, y)
            assert L.join(x, y) == join_from_order(L.elements, L.leq, x, y)


@pytest.mark.parametrize("L", TABLES, ids=lambda L: L.name)
def test_de_morgan_in_tables(L):
    for x in L.elements:
        for y in L.elements:
            assert L.ortho(L.join(x, y)) == L.meet(L.ortho(x), L.ortho(y))


@pytest.mark.parametrize("L", [lg.boolean(3), lg.mo2()], ids=lambda L: L.name)
def test_orthomodular_tables_pass(L):
    assert lg.check_ortholattice(L).passed
    assert lg.check_orthomodular(L).passed


def test_hexagon_fails_orthomodularity_at_a_b():
    L = lg.o6()
    assert lg.check_ortholattice(L).passed
    rep = lg.check_orthomodular(L)
    assert rep.verdict == "fail"
    w = rep.witnesses[0]
    assert (w["a"], w["b"]) == ("a", "b")
    assert w["a v (b ^ a')"] == "a"


def test_hexagon_fails_covering():
    assert not lg.check_covering_abstract(lg.o6()).passed
    assert lg.check_covering_abstract(lg.mo2()).passed


def test_self_orthogonal_middle_breaks_the_ortholattice():
    rep = lg.check_ortholattice(lg.chain3_self_ortho())
    assert not rep.passed
    assert {w["law"] for w in rep.witnesses} >= {"a ^ a' = 0", "a v a' = 1"}


def test_centers():
    assert set(lg.center(lg.mo2())) == {"0", "1"}
    assert len(lg.center(lg.boolean(3))) == 8
    assert lg.check_center_trivial(lg.mo2()).passed
    assert not lg.check_center_trivial(lg.boolean(2)).passed


def test_atoms_and_chains():
    assert lg.boolean(3).atoms() == ["{1}", "{2}", "{3}"]
    assert set(lg.mo2().atoms()) == {"a", "a'", "b", "b'"}
    assert lg.chain_length(lg.boolean(3)) == 3
    assert lg.chain_length(lg.mo2()) == 2
    assert lg.minimal_elements(lg.o6()) == lg.o6().atoms()


def test_superposition():
    assert lg.check_proper_quantum(lg.mo2()).passed
    assert not lg.check_proper_quantum(lg.boolean(2)).passed
    assert len(lg.complementary_pairs(lg.mo2())) == 4
    assert lg.complementary_pairs(lg.boolean(3)) == []


def test_malformed_ortho_names_the_element():
    with pytest.raises(MalformedTable) as e:
        lg.FiniteLogic(["0", "a", "1"], [("0", "a"), ("a", "1")], {"0": "1"})
    assert e.value.location == "a"


def test_ortho_must_be_a_bijection():
    with pytest.raises(MalformedTable):
        lg.FiniteLogic(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
                       {"0": "1", "1": "0", "a": "a", "b": "a"})


def test_cycle_in_order_is_rejected():
    with pytest.raises(MalformedTable):
        lg.FiniteLogic(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")],
                       {"0": "1", "a": "b"})


def test_unknown_element_in_order():
    with pytest.raises(MalformedTable) as e:
        lg.FiniteLogic(["0", "1"], [("0", "z")], {"0": "1"})
    assert e.value.location == "z"


def test_ac_reports_cover_the_lattice_conditions():
    names = [r.check for r in lg.ac_reports(lg.mo2())]
    assert names[:5] == ["ortholattice", "orthomodular", "atomicity", "covering", "center"]


def test_twelve_element_fragment():
    gens = [Q3.atom(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]]
    F = lg.GeneratedSublattice(Q3, gens)
    assert len(F.elements) == 12 and not F.truncated
    assert len(F.atoms()) == 5
    for r in (lg.check_ortholattice(F), lg.check_orthomodular(F), lg.check_covering_abstract(F)):
        assert r.passed
    # [e3] splits off: the fragment is MO2 x 2, so its center is not trivial
    assert Q3.atom((0, 0, 1)) in lg.center(F)


def test_truncation_is_flagged():
    gens = [Q3.atom(v) for v in [(1, 2, 0), (0, 1, 3), (2, 0, 1)]]
    F = lg.GeneratedSublattice(Q3, gens, cap=10)
    assert F.truncated and len(F.elements) <= 10
    assert F.stats()["cap"] == 10
    assert all(F.contains(hg.ortho(x)) for x in F.elements)
    assert lg.check_orthocomplete(F).verdict in ("pass", "truncated")


@settings(max_examples=25, deadline=None)
@given(st.lists(vectors(3, st.integers(-2, 2)), min_size=1, max_size=3))
def test_fragments_are_closed_or_truncated(gens):
    F = lg.GeneratedSublattice(Q3, [Q3.atom(v) for v in gens], cap=80)
    assert all(F.contains(hg.ortho(x)) for x in F.elements)
    if not F.truncated:
        for x in F.elements:
            for y in F.elements:
                assert F.contains(hg.meet(x, y)) and F.contains(hg.join(x, y))
    for x in F.elements[:10]:
        for y in F.elements:
            assert F.leq(x, y) == hg.leq(x, y)
