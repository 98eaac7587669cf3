from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic import effects as fx
from qlogic import formats
from qlogic import hermitian as hg
from qlogic import logic as lg
from qlogic.effects import Effect
from qlogic.errors import NotAPartition
from qlogic.hermitian import HermitianSpace
from qlogic.scalars import QQ

from .oracles import postulate_oracle

Q3 = HermitianSpace(QQ, 3)
quarters = st.sampled_from([Fraction(k, 4) for k in range(5)])


@st.composite
def candidate_sets(draw, n_states=2):
    k = draw(st.integers(1, 6))
    return [tuple(draw(quarters) for _ in range(n_states)) for _ in range(k)]


def effects_of(values):
    return [Effect(v, f"f{i}") for i, v in enumerate(values)]


@settings(max_examples=150, deadline=None)
@given(candidate_sets(), st.booleans())
def test_postulate_agrees_with_subset_sum_oracle(values, strict):
    rep = fx.check_orthogonality_postulate(effects_of(values), max_seq_len=4, strict=strict)
    assert rep.passed == postulate_oracle(values, 4, strict)


def test_half_triple_fails_with_a_length_three_witness():
    rep = fx.check_orthogonality_postulate(fx.half_triple(), max_seq_len=4)
    assert rep.verdict == "fail"
    w = rep.witnesses[0]
    assert w["length"] == 3 and w["sum"] == [Fraction(3, 2), Fraction(3, 2)]
    assert rep.stats["shortest witness"] == 3


def test_half_triple_passes_when_sequences_are_short():
    # the pair h + h = e is completed by 0, so the failure needs three terms
    assert fx.check_orthogonality_postulate(fx.half_triple(), max_seq_len=2).passed


@pytest.mark.parametrize("k", [1, 2, 3])
def test_boolean_partitions_pass(k):
    cands = fx.partition_indicators(k)
    assert fx.check_orthogonality_postulate(cands, max_seq_len=4).passed
    assert fx.check_orthogonality_postulate(cands, max_seq_len=4, strict=False).passed
    rep = fx.check_theorem2_conclusions(cands)
    assert rep.passed and rep.stats["boolean"]


def test_partition_labels():
    assert [f.name for f in fx.partition_indicators(2)] == ["0", "1_1", "1_2", "e"]


def test_loaded_corpus_effects():
    assert not fx.check_orthogonality_postulate(formats.load_effects("half_triple")).passed
    assert fx.check_theorem2_conclusions(formats.load_effects("boolean_partition")).passed


def test_effect_arithmetic():
    f = Effect((Fraction(1, 4), Fraction(1)))
    assert f.complement() == Effect((Fraction(3, 4), Fraction(0)))
    assert f + f.complement() == Effect.constant(1, 2)
    assert Effect.constant(0, 2) <= f


@pytest.fixture(scope="module")
def family():
    F = lg.GeneratedSublattice(Q3, formats.load_atoms("q3_atoms", Q3))
    return fx.AtomStates(F)


def test_luders_filters_satisfy_the_axioms(family):
    for a in family.fragment.elements:
        for rep in fx.check_filter_axioms(fx.luders_filter(a, family), a):
            assert rep.passed, (rep.check, family.fragment.label(a), rep.witnesses)


def test_atom_level_checks(family):
    assert fx.check_s1(family).passed
    assert fx.check_projection_postulate(family).passed


def test_filter_effect_is_the_element(family):
    for a in family.fragment.elements:
        assert fx.effect_of(fx.luders_filter(a, family)).values == family.effect(a).values


def test_filter_support_is_sasaki(family):
    a = Q3.subspace([[1, 0, 0], [0, 0, 1]])
    i = family.index_of_atom(Q3.atom((1, 1, 0)))
    w, j = fx.luders_filter(a, family).images[i]
    assert w == Fraction(1, 2) and family.atoms[j] == Q3.atom((1, 0, 0))
    assert family.atoms[j] == hg.sasaki(a, Q3.atom((1, 1, 0)))


def test_prepare_operation_is_not_a_filter(family):
    a = Q3.subspace([[1, 0, 0], [0, 1, 0]])
    beta = family.index_of_atom(Q3.atom((1, 0, 0)))
    phi = fx.measure_and_prepare(family.effect(a), family, beta)
    failed = {r.check for r in fx.check_filter_axioms(phi) if not r.passed}
    assert "F1" in failed


def test_commuting_filters_keep_eigenstates(family):
    a = fx.luders_filter(Q3.atom((0, 0, 1)), family)
    b = fx.luders_filter(Q3.subspace([[1, 0, 0], [0, 1, 0]]), family)
    assert fx.check_eigenstate_preservation(a, b).passed


def test_observable_and_instrument(family):
    frame = [Q3.atom(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    obs = fx.observable_from_partition(family.fragment, frame)
    assert obs.check_additivity(family.states).passed
    assert fx.check_instrument(obs, family).passed
    dist = obs.distribution(family.states[family.index_of_atom(Q3.atom((1, 1, 0)))])
    assert dist == {"1": Fraction(1, 2), "2": Fraction(1, 2), "3": 0}


def test_non_partition_is_rejected(family):
    with pytest.raises(NotAPartition):
        fx.observable_from_partition(family.fragment, [Q3.atom((1, 0, 0)), Q3.atom((1, 1, 0))])
    with pytest.raises(NotAPartition):
        fx.observable_from_partition(family.fragment, [Q3.atom((1, 0, 0)), Q3.atom((0, 1, 0))])


def test_identity_and_zero_operations(family):
    ident, zero = fx.identity_operation(family), fx.zero_operation(family)
    assert ident.compose(ident).images == ident.images
    assert all(w == 0 for w, _ in zero.compose(ident).images)
    assert fx.isotonic(ident, fx.luders_filter(Q3.whole, family))
