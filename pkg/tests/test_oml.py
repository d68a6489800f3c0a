import pytest
from hypothesis import given

from conftest import OM_NAMES, lattice_with
from oracles import join_naive, meet_naive, orthomodular_naive
from omlkit import oml
from omlkit.errors import (NoMeet, NotAPoset, NotOrthomodular, OrthoViolation,
                           UnknownCorpusName, UnknownElement)


@pytest.mark.parametrize("name,size", [
    ("zero", 1), ("2", 2), ("B2", 4), ("B3", 8), ("boolean(4)", 16),
    ("MO2", 6), ("mo(3)", 8), ("HEX", 6),
])
def test_corpus_sizes(name, size):
    assert len(oml.corpus(name)) == size


@pytest.mark.parametrize("name", OM_NAMES + ["HEX"])
def test_orthomodular_flag_matches_naive(name):
    L = oml.corpus(name)
    assert L.orthomodular == orthomodular_naive(L)
    assert oml.check_orthomodular(L).passed == L.orthomodular


def test_aliases():
    assert oml.corpus("B2") == oml.corpus("boolean(2)")
    assert oml.corpus("MO2") == oml.corpus("mo(2)")
    assert oml.corpus("hexagon") == oml.corpus("HEX")
    assert oml.two() == oml.corpus("2")


def test_unknown_corpus_name():
    with pytest.raises(UnknownCorpusName):
        oml.corpus("MO99x")


def test_hexagon_fails_at_a_below_b():
    H = oml.corpus("HEX")
    assert oml.check_ortholattice(H).passed
    rep = oml.check_orthomodular(H)
    assert not rep.passed
    assert [c.witness for c in rep.failures()] == [("a", "b")] * 3
    assert rep.check("three conditions agree").passed
    a, b = H.elem("a"), H.elem("b")
    assert H.join(a, H.meet(H.perp(a), b)) == a
    with pytest.raises(NotOrthomodular):
        H.require_orthomodular()


def test_mo2_not_distributive():
    L = oml.corpus("MO2")
    rep = oml.check_boolean(L)
    assert not rep.passed
    assert rep.check("distributive").witness == ("a", "a'", "b")
    assert not oml.is_distributive_triple(L, L.elem("a"), L.elem("b"), L.elem("b'"))


@pytest.mark.parametrize("name", ["2", "B2", "B3", "boolean(4)"])
def test_boolean_algebras_distributive(name):
    assert oml.check_boolean(oml.corpus(name)).passed


def test_build_from_generating_relation():
    L = oml.build_lattice({
        "name": "chain-ish", "elements": ["0", "a", "a'", "1"],
        "order": [["0", "a"], ["a", "1"], ["0", "a'"], ["a'", "1"], ["0", "1"]],
        "ortho": {"0": "1", "a": "a'", "a'": "a", "1": "0"},
    })
    assert oml.find_iso(L, oml.corpus("B2")) is not None


def test_build_cycle():
    spec = {"elements": ["0", "x", "y", "1"],
            "order": [["0", "x"], ["x", "y"], ["y", "x"], ["y", "1"]],
            "ortho": {"0": "1", "x": "y", "y": "x", "1": "0"}}
    with pytest.raises(NotAPoset) as e:
        oml.build_lattice(spec)
    assert set(e.value.witness) >= {"x", "y"}


def test_build_no_meet():
    spec = {"elements": ["0", "a", "b", "c", "d", "1"],
            "order": [["0", "a"], ["0", "b"], ["a", "c"], ["b", "c"], ["a", "d"], ["b", "d"],
                      ["c", "1"], ["d", "1"]],
            "ortho": {"0": "1", "a": "d", "b": "c", "c": "b", "d": "a", "1": "0"}}
    with pytest.raises(NoMeet):
        oml.build_lattice(spec)


def test_build_bad_ortho():
    base = {"elements": ["0", "1"], "order": [["0", "1"]]}
    with pytest.raises(OrthoViolation):
        oml.build_lattice({**base, "ortho": {"0": "1"}})
    # 0 ↦ 0 breaks the involution and the complement law
    with pytest.raises(OrthoViolation):
        oml.build_lattice({**base, "ortho": {"0": "0", "1": "1"}})
    L = oml.build_lattice({**base, "ortho": {"0": "0", "1": "1"}}, strict=False)
    assert not oml.check_ortholattice(L).passed


def test_build_unknown_and_duplicate_labels():
    with pytest.raises(UnknownElement):
        oml.build_lattice({"elements": ["0", "1"], "order": [["0", "z"]],
                           "ortho": {"0": "1", "1": "0"}})
    with pytest.raises(UnknownElement):
        oml.build_lattice({"elements": ["0", "0"], "order": [], "ortho": {"0": "0"}})


def test_elem_lookup():
    L = oml.corpus("MO2")
    assert L.elem("a'") == L.perp("a")
    with pytest.raises(UnknownElement):
        L.elem("q")
    with pytest.raises(UnknownElement):
        L.elem(17)


def test_join_irreducibles_are_atoms_in_mo2():
    L = oml.corpus("MO2")
    assert sorted(L.labels[j] for j in L.join_irreducibles) == ["a", "a'", "b", "b'"]


def test_downset():
    L = oml.corpus("B3")
    D = oml.downset(L, "ab")
    assert len(D) == 4 and D.orthomodular
    assert oml.find_iso(D, oml.corpus("B2")) is not None
    # relative complement inside ↓a is a ∧ x^⊥
    u = D.labels.index("a@ab")
    assert D.labels[D.ortho[u]] == "b@ab"


@given(lattice_with(2))
def test_meet_join_match_naive(t):
    L, x, y = t
    assert L.meet(x, y) == meet_naive(L, x, y)
    assert L.join(x, y) == join_naive(L, x, y)


@given(lattice_with(2))
def test_de_morgan_and_involution(t):
    L, x, y = t
    assert L.perp(L.perp(x)) == x
    assert L.perp(L.join(x, y)) == L.meet(L.perp(x), L.perp(y))
    assert L.meet(x, L.perp(x)) == L.bottom


@given(lattice_with(3))
def test_sasaki_adjunction(t):
    L, k, m, n = t
    assert L.le(oml.and_then(L, k, m), n) == L.le(k, oml.sasaki_hook(L, m, n))


@given(lattice_with(2))
def test_orthomodular_law(t):
    L, x, y = t
    if L.le(x, y):
        assert L.join(x, L.meet(L.perp(x), y)) == y


@given(lattice_with(1))
def test_downsets_are_orthomodular(t):
    L, a = t
    D = oml.downset(L, a)
    assert len(D) == sum(L.le(x, a) for x in L)
    assert oml.check_orthomodular(D).passed


@given(lattice_with(0))
def test_find_iso_self(t):
    (L,) = t
    iso = oml.find_iso(L, L)
    assert iso is not None
    assert all(iso[L.ortho[x]] == L.ortho[iso[x]] for x in L)


def test_find_iso_negative():
    assert oml.find_iso(oml.corpus("MO2"), oml.corpus("HEX")) is None
    assert oml.find_iso(oml.corpus("B3"), oml.corpus("mo(3)")) is None
