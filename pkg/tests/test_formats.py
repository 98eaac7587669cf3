from __future__ import annotations

from fractions import Fraction

import pytest

from qlogic import formats
from qlogic import logic as lg
from qlogic.errors import MalformedTable, ParseError, ValidationError
from qlogic.scalars import QQ, quadratic

MO2_TEXT = """\
# comment
name = square
elements = [0, a, a', b, b', 1]
bottom = 0, top = 1
ortho = [(a, a'), (b, b'), (0, 1)]
"""


def test_builtin_corpus_is_complete():
    names = set(formats.builtin_names())
    assert {"q2", "q3", "qi3", "bool2", "bool3", "mo2", "o6"} <= names


def test_identity_space():
    space = formats.load_space("q3")
    assert space.dim == 3 and space.field == QQ and space.standard


def test_gaussian_space():
    space = formats.load_space("qi3")
    assert space.field == quadratic(-1)


def test_logic_file_with_pair_ortho():
    L = formats.parse_logic(MO2_TEXT, "square.txt")
    assert L.name == "square"
    assert lg.check_ortholattice(L).passed and lg.check_orthomodular(L).passed
    assert L.ortho("a") == "a'" and L.ortho("a'") == "a"


@pytest.mark.parametrize("name", ["mo2", "bool2", "bool3"])
def test_corpus_logics_are_orthomodular(name):
    assert lg.check_orthomodular(formats.load_logic(name)).passed


def test_hexagon_file():
    assert not lg.check_orthomodular(formats.load_logic("o6")).passed


def test_malformed_ortho_names_the_element():
    text = "elements = [0, a, b, 1]\nbottom = 0, top = 1\northo = {0: 1, a: a}\n"
    with pytest.raises(ValidationError) as e:
        formats.parse_logic(text, "bad.txt")
    assert isinstance(e.value, MalformedTable)
    assert e.value.location == "bad.txt: b"


def test_inconsistent_ortho_pairs():
    text = "elements = [0, a, b, 1]\nbottom = 0, top = 1\northo = {0: 1, a: b, b: 1}\n"
    with pytest.raises(MalformedTable):
        formats.parse_logic(text, "bad.txt")


def test_parse_error_is_located():
    text = "field = Q\ndim = 2\nform = [[1, 0], [0, x]]\n"
    with pytest.raises(ParseError) as e:
        formats.parse_space(text, "s.txt")
    assert (e.value.line, e.value.column) == (3, 21)
    assert str(e.value).startswith("s.txt:3:21:")


def test_unterminated_list():
    with pytest.raises(ParseError) as e:
        formats.parse_space("field = Q\ndim = 2\nform = [[1, 0], [0, 1]\n", "s.txt")
    assert e.value.line == 4


def test_unknown_key():
    with pytest.raises(ParseError) as e:
        formats.parse_space("field = Q\ndim = 2\nshape = round\n", "s.txt")
    assert e.value.line == 3


def test_indefinite_form_is_a_validation_error():
    with pytest.raises(ValidationError) as e:
        formats.parse_space("field = Q\ndim = 2\nform = [[1, 0], [0, -1]]\n", "s.txt")
    assert e.value.location == "s.txt: form"


def test_quadratic_field_header():
    space = formats.parse_space("field = Q(rt), rt2 = -1\ndim = 2\nform = [[1, rt], [-rt, 2]]\n")
    assert space.field == quadratic(-1)


def test_state_file():
    L = formats.load_logic("mo2")
    alpha = formats.load_state("mo2_state", L)
    assert alpha("a") == 1 and alpha.is_valid()


def test_state_with_unknown_element():
    L = formats.load_logic("mo2")
    with pytest.raises(ParseError):
        formats.parse_state("values = {0: 0, z: 1}\n", L)


def test_state_must_cover_the_logic():
    L = formats.load_logic("mo2")
    with pytest.raises(ValidationError):
        formats.parse_state("values = {0: 0, a: 1}\n", L)


def test_symmetry_and_atoms():
    space = formats.load_space("q3")
    S = formats.load_symmetry("swap", space)
    atoms = formats.load_atoms("q3_atoms", space)
    assert S.image(atoms[0]) == atoms[1]
    with pytest.raises(ParseError):
        formats.parse_atoms("atoms = [[0, 0, 0]]\n", space)


def test_effects_file():
    effs = formats.load_effects("half_triple")
    assert [f.values for f in effs] == [(Fraction(1, 2), Fraction(1, 2))] * 3
    with pytest.raises(ValidationError):
        formats.parse_effects("states = 2\neffects = {f: [2, 0]}\n")


def test_vector_text():
    space = formats.load_space("q3")
    assert formats.parse_vector_text("1, 1/2, 0", space) == space.vector((1, Fraction(1, 2), 0))
    with pytest.raises(ParseError):
        formats.parse_vector_text("1, 2", space)


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        formats.load_space("no-such-space")


def test_observable_file():
    space = formats.load_space("q3")
    F = lg.GeneratedSublattice(space, formats.load_atoms("q3_atoms", space))
    obs = formats.parse_observable("outcomes = {x: [[1, 0, 0]], rest: [[0, 1, 0], [0, 0, 1]]}\n", F)
    assert set(obs.outcomes) == {"x", "rest"}
