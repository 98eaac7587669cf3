from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qlogic import hermitian as hg
from qlogic.errors import NotAnAtom, NotHermitian, NotOrthogonal, NotPositiveDefinite, SpaceMismatch
from qlogic.hermitian import HermitianSpace
from qlogic.scalars import QQ, quadratic

from .oracles import frac_rank, hermitian_form, is_square_by_factoring
from .strategies import small_ints, vectors

Q3 = HermitianSpace(QQ, 3)
QI3 = HermitianSpace(quadratic(-1), 3)
SKEW = HermitianSpace(QQ, 3, [[2, 1, 0], [1, 2, 0], [0, 0, 3]], name="skew")
SPACES = [Q3, QI3, SKEW]

gauss = st.tuples(small_ints, small_ints)


@st.composite
def subspaces(draw, spaces=tuple(SPACES)):
    space = draw(st.sampled_from(spaces))
    k = draw(st.integers(0, space.dim))
    if space.field.d is None:
        rows = draw(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=k, max_size=k))
    else:
        K = space.field
        rows = [[K(a, b) for a, b in r] for r in
                draw(st.lists(st.lists(gauss, min_size=3, max_size=3), min_size=k, max_size=k))]
    return space.subspace(rows)


@st.composite
def subspace_pairs(draw):
    M = draw(subspaces())
    N = draw(subspaces(spaces=(M.space,)))
    return M, N


@st.composite
def rational_subspace_pairs(draw):
    M = draw(subspaces(spaces=(Q3, SKEW)))
    N = draw(subspaces(spaces=(M.space,)))
    return M, N


@given(subspaces())
def test_ortho_is_a_complement(M):
    P = hg.ortho(M)
    assert hg.ortho(P) == M
    assert hg.meet(M, P) == M.space.zero
    assert hg.join(M, P) == M.space.whole
    assert M.dim + P.dim == M.space.dim


@given(subspace_pairs())
def test_de_morgan(pair):
    M, N = pair
    assert hg.ortho(hg.join(M, N)) == hg.meet(hg.ortho(M), hg.ortho(N))
    assert hg.ortho(hg.meet(M, N)) == hg.join(hg.ortho(M), hg.ortho(N))


@given(subspace_pairs())
def test_orthomodular_law(pair):
    M, N = pair
    lo, hi = hg.meet(M, N), hg.join(M, N)
    for a, b in [(lo, M), (M, hi), (lo, hi)]:
        assert hg.leq(a, b)
        assert hg.join(a, hg.meet(b, hg.ortho(a))) == b


@given(rational_subspace_pairs())
def test_dimensions_match_rank_oracle(pair):
    M, N = pair
    rows = [[x.rational() for x in r] for r in M.basis + N.basis]
    assert hg.join(M, N).dim == frac_rank(rows)
    assert M.dim + N.dim == hg.join(M, N).dim + hg.meet(M, N).dim
    assert hg.intersection_dim(M, N) == hg.meet(M, N).dim


@given(subspace_pairs())
def test_order_agrees_with_meet(pair):
    M, N = pair
    assert hg.leq(M, N) == (hg.meet(M, N) == M)
    assert (M <= N) == hg.leq(M, N)


@given(subspaces(spaces=(Q3, SKEW)), vectors(3), vectors(3))
def test_projection_laws(M, u, v):
    space = M.space
    u, v = space.vector(u), space.vector(v)
    Pu, Pv = hg.projection(M, u), hg.projection(M, v)
    assert hg.projection(M, Pv) == Pv
    assert hg.form_eval(u, Pv) == hg.form_eval(Pu, v)
    assert Pv + hg.projection(hg.ortho(M), v) == v
    assert Pv in M


@given(subspaces(spaces=(Q3, SKEW)), vectors(3))
def test_sasaki_is_idempotent_on_atoms(a, g):
    p = a.space.atom(g)
    s = hg.sasaki(a, p)
    assert s.dim <= 1 and hg.leq(s, a)
    if s.dim == 1:
        assert hg.sasaki(a, s) == s


@given(subspaces(spaces=(Q3, SKEW)), vectors(3))
def test_covering_per_pair(a, g):
    p = a.space.atom(g)
    assert hg.covering_dim(a, p) == hg.meet(hg.join(a, p), hg.ortho(a)).dim <= 1
    assert hg.covering_dims(a, [p]) == [hg.covering_dim(a, p)]


@given(vectors(3), vectors(3))
def test_form_matches_oracle(u, v):
    H = [[2, 1, 0], [1, 2, 0], [0, 0, 3]]
    assert hg.form_eval(SKEW.vector(u), SKEW.vector(v)).rational() == hermitian_form(H, u, v)


def test_gaussian_form_is_sesquilinear():
    K = QI3.field
    u, v = QI3.vector([K(1, 1), K(0), K(2)]), QI3.vector([K(0, 1), K(1), K(0)])
    i = K(0, 1)
    assert hg.form_eval(u.scale(i), v) == i * hg.form_eval(u, v)
    assert hg.form_eval(u, v.scale(i)) == i.conj() * hg.form_eval(u, v)
    assert hg.form_eval(v, u) == hg.form_eval(u, v).conj()


def test_rejects_non_hermitian_form():
    with pytest.raises(NotHermitian):
        HermitianSpace(QQ, 2, [[1, 1], [0, 1]])


@pytest.mark.parametrize("form", [[[1, 0], [0, -2]], [[1, 2], [2, 1]], [[0, 0], [0, 1]]])
def test_rejects_forms_that_are_not_positive_definite(form):
    # diag(1, -2) is anisotropic over Q but indefinite; it is rejected too
    with pytest.raises(NotPositiveDefinite):
        HermitianSpace(QQ, 2, form)


def test_subspaces_of_different_spaces_do_not_mix():
    with pytest.raises(SpaceMismatch):
        hg.join(Q3.atom((1, 0, 0)), SKEW.atom((1, 0, 0)))


def test_ortho_example():
    assert hg.ortho(Q3.atom((1, 1, 0))) == Q3.subspace([[1, -1, 0], [0, 0, 1]])


@pytest.mark.parametrize("g,unit", [((3, 4), (Fraction(3, 5), Fraction(4, 5))), ((1, 1), None)])
def test_unit_vectors_in_plane(g, unit):
    Q2 = HermitianSpace(QQ, 2)
    u = hg.unit_vector_in_atom(Q2.atom(g))
    assert (u is None and unit is None) or tuple(x.rational() for x in u.coords) == unit


def test_unit_vector_of_basis_atom():
    u = hg.unit_vector_in_atom(Q3.atom((1, 0, 0)))
    assert u == Q3.vector((1, 0, 0))


def test_unit_vector_needs_an_atom():
    with pytest.raises(NotAnAtom):
        hg.unit_vector_in_atom(Q3.whole)


def cross(x, w):
    return (x[1] * w[2] - x[2] * w[1], x[2] * w[0] - x[0] * w[2], x[0] * w[1] - x[1] * w[0])


@given(vectors(3), vectors(3))
def test_equal_norm_representatives_against_oracle(x, w):
    y = cross(x, w)
    assume(any(y))
    p, q = Q3.atom(x), Q3.atom(y)
    reps = hg.equal_norm_representatives(p, q)
    assert (reps is not None) == is_square_by_factoring(hg.norm_ratio(p, q))
    if reps is not None:
        a, b = reps
        assert hg.form_eval(a, a) == hg.form_eval(b, b)
        assert Q3.atom(a) == p and Q3.atom(b) == q


def test_equal_norm_needs_orthogonal_atoms():
    with pytest.raises(NotOrthogonal):
        hg.equal_norm_representatives(Q3.atom((1, 0, 0)), Q3.atom((1, 1, 0)))


def test_orthomodular_space_report():
    rng = random.Random(7)
    sample = [QI3.random_subspace(rng) for _ in range(30)]
    assert hg.check_orthomodular_space(QI3, sample).passed


def test_subspaces_are_interned():
    assert Q3.atom((2, 2, 0)) is Q3.atom((1, 1, 0))
    assert Q3.atom((1, 1, 0)).describe() == "[(1, 1, 0)]"
