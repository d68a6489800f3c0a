import json

import pytest
from hypothesis import given

from conftest import FIXTURES, om_lattices
from omlkit import fileio, foulis, galois as gal, oml
from omlkit.errors import NotAPoset, NoUnit, ParseError

LATTICE_FILES = ["mo2.json", "hexagon.json", "b2_generating.json"]
MORPHISM_FILES = ["mor_mo2_2.json", "mor_2_mo2_inline.json"]


@pytest.mark.parametrize("name", LATTICE_FILES)
def test_lattice_roundtrip(name):
    L = fileio.load_lattice(FIXTURES / name)
    doc = fileio.lattice_to_dict(L)
    L2 = fileio.load_lattice(doc)
    assert L2 == L and L2.name == L.name
    assert fileio.lattice_to_dict(L2) == doc


def test_lattice_files_match_corpus():
    assert fileio.load_lattice(FIXTURES / "mo2.json") == oml.corpus("MO2")
    assert fileio.load_lattice(FIXTURES / "hexagon.json") == oml.corpus("HEX")
    B = fileio.load_lattice(FIXTURES / "b2_generating.json")
    assert B.name == "L" and oml.find_iso(B, oml.corpus("B2")) is not None


@pytest.mark.parametrize("name", MORPHISM_FILES)
def test_morphism_roundtrip(name):
    f = fileio.load_morphism(FIXTURES / name)
    doc = fileio.morphism_to_dict(f)
    assert fileio.load_morphism(doc) == f
    assert fileio.morphism_to_dict(fileio.load_morphism(doc)) == doc


def test_morphism_files_are_a_dagger_pair():
    f = fileio.load_morphism(FIXTURES / "mor_mo2_2.json")
    h = fileio.load_morphism(FIXTURES / "mor_2_mo2_inline.json")
    assert gal.dagger(f) == h
    assert h == gal.point(oml.corpus("MO2"), "a")


def test_fsg_roundtrip():
    S = fileio.load_fsg(FIXTURES / "end2.json")
    T = fileio.load_fsg(fileio.fsg_to_dict(S))
    assert T.same_tables(S) and T.name == S.name
    assert fileio.fsg_to_dict(T) == fileio.fsg_to_dict(S)
    assert foulis.check_foulis(S).passed


def test_end2_file_matches_computed():
    S = fileio.load_fsg(FIXTURES / "end2.json")
    E = foulis.end_foulis(oml.two())
    assert S.labels == E.labels and S.sai.tolist() == E.sai.tolist()
    assert S.mul.tolist() == E.mul.tolist()


@given(om_lattices)
def test_corpus_roundtrip(L):
    doc = fileio.lattice_to_dict(L)
    assert fileio.load_lattice(json.loads(fileio.dumps(doc))) == L


@given(om_lattices)
def test_covers_generate_order(L):
    cov = fileio.covers(L)
    assert all(L.leq[x][y] and x != y for x, y in cov)
    # Hasse edges: every element but the bottom covers something
    assert {y for _, y in cov} == set(L) - {L.bottom}


def test_truncated_file():
    with pytest.raises(ParseError) as e:
        fileio.load_lattice(FIXTURES / "truncated.json")
    assert "line" in str(e.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        fileio.load_lattice(tmp_path / "nope.json")


@pytest.mark.parametrize("doc,needle", [
    ({"elements": ["0"], "ortho": {"0": "0"}}, "'order'"),
    ({"elements": "01", "order": [], "ortho": {}}, "'elements'"),
    ({"elements": [0], "order": [], "ortho": {}}, "elements[0]"),
    ({"elements": ["0"], "order": [["0"]], "ortho": {"0": "0"}}, "order[0]"),
    ([], "JSON object"),
])
def test_lattice_field_context(doc, needle):
    with pytest.raises(ParseError) as e:
        fileio.parse_lattice(doc)
    assert needle in str(e.value)


def test_structural_errors_keep_their_type():
    with pytest.raises(NotAPoset):
        fileio.parse_lattice({"elements": ["x", "y"], "order": [["x", "y"], ["y", "x"]],
                              "ortho": {"x": "y", "y": "x"}})


def test_morphism_errors():
    with pytest.raises(ParseError, match="dom"):
        fileio.parse_morphism({"cod": "2", "lower": {}})
    with pytest.raises(ParseError, match="unknown corpus"):
        fileio.parse_morphism({"dom": "Q7", "cod": "2", "lower": {}})
    with pytest.raises(ParseError, match="no value"):
        fileio.parse_morphism({"dom": "2", "cod": "2", "lower": {"0": "1"}})
    with pytest.raises(ParseError, match="not in"):
        fileio.parse_morphism({"dom": "2", "cod": "2", "lower": {"0": "1", "1": "z"}})


def test_fsg_errors():
    with pytest.raises(NoUnit):
        fileio.load_fsg(FIXTURES / "no_unit.json")
    with pytest.raises(ParseError, match="'sai'"):
        fileio.parse_fsg({"elements": ["1"], "unit": "1", "mul": [["1"]], "inv": {"1": "1"},
                          "sai": ["1"]})
