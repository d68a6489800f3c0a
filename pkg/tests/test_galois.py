import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import compose_lowers, galois_lowers
from omlkit import galois as gal, oml
from omlkit.errors import BudgetExceeded, DomainMismatch, NotGalois

# brute-force counts over all lower tables (tests/oracles.py), frozen
HOM_COUNTS = {
    ("zero", "MO2"): 1, ("2", "zero"): 1, ("2", "2"): 2, ("2", "B2"): 4, ("2", "MO2"): 6,
    ("2", "B3"): 8, ("B2", "2"): 4, ("B2", "B2"): 16, ("B2", "MO2"): 36, ("B2", "B3"): 64,
    ("MO2", "2"): 6, ("MO2", "B2"): 36, ("MO2", "MO2"): 234, ("MO2", "B3"): 216,
    ("B3", "2"): 8, ("B3", "B2"): 64, ("HEX", "2"): 6, ("MO2", "HEX"): 98, ("HEX", "HEX"): 116,
}


@pytest.mark.parametrize("pair,count", sorted(HOM_COUNTS.items()))
def test_hom_counts(pair, count):
    X, Y = map(oml.corpus, pair)
    assert len(gal.enumerate_hom(X, Y)) == count


@pytest.mark.parametrize("pair", [("2", "MO2"), ("MO2", "B2"), ("HEX", "2"), ("B2", "HEX")])
def test_enumeration_matches_brute_force(pair):
    X, Y = map(oml.corpus, pair)
    assert [f.lower for f in gal.enumerate_hom(X, Y)] == sorted(galois_lowers(X, Y))


def test_larger_counts_follow_from_join_irreducibles():
    # Boolean domains: a map is fixed by its values on the atoms
    assert len(gal.enumerate_hom(oml.corpus("B3"), oml.corpus("B3"))) == 8 ** 3
    assert len(gal.enumerate_hom(oml.corpus("B2"), oml.corpus("mo(3)"))) == 8 ** 2


def test_budget():
    X, Y = oml.corpus("MO2"), oml.corpus("MO2")
    with pytest.raises(BudgetExceeded) as e:
        gal.enumerate_hom(X, Y, budget=10)
    assert e.value.required == gal.hom_candidates(X, Y) == 6 ** 4
    assert len(gal.enumerate_hom(X, Y, budget=6 ** 4)) == 234


def test_galmor_rejects_non_adjoint():
    T = oml.two()
    with pytest.raises(NotGalois) as e:
        gal.galmor(T, T, [1, 1], [0, 0])
    assert len(e.value.witness) == 2
    f = gal.GalMor(T, T, [1, 1], [0, 0])
    rep = gal.check_galois(f)
    # x = 1, y = 0: 0 <= f_*(1) = 1 holds but 1 <= f^*(0) = 0 does not
    assert not rep.passed and rep.failures()[0].witness == ("1", "0")


def test_from_lower_label_dict():
    X, Y = oml.corpus("MO2"), oml.two()
    f = gal.from_lower(X, Y, {"0": "1", "a": "0", "a'": "1", "b": "0", "b'": "0", "1": "0"})
    assert f == gal.dagger(gal.point(X, "a"))
    with pytest.raises(NotGalois):
        gal.from_lower(X, Y, {"0": "1"})


def test_identity_and_zero_tables():
    L = oml.corpus("MO2")
    assert gal.identity(L).lower == L.ortho
    z = gal.zero_mor(L, oml.corpus("B2"))
    assert gal.is_zero(z) and gal.check_galois(z).passed


def test_compose_domain_mismatch():
    f = gal.identity(oml.two())
    g = gal.identity(oml.corpus("B2"))
    with pytest.raises(DomainMismatch):
        gal.compose(g, f)
    with pytest.raises(DomainMismatch):
        gal.equal(f, g)


NAMES = ["2", "B2", "MO2"]
homs = st.sampled_from(list(itertools.product(NAMES, repeat=2)))


@st.composite
def composable(draw, n):
    objs = [oml.corpus(draw(st.sampled_from(NAMES))) for _ in range(n + 1)]
    return [draw(st.sampled_from(gal.enumerate_hom(objs[i], objs[i + 1]))) for i in range(n)]


@given(composable(3))
def test_associative(fs):
    f, g, h = fs
    assert gal.compose(h, gal.compose(g, f)) == gal.compose(gal.compose(h, g), f)


@given(composable(2))
def test_compose_is_galois_and_matches_oracle(fs):
    f, g = fs
    h = gal.compose(g, f)
    assert gal.check_galois(h).passed
    assert tuple(h.lower) == compose_lowers(g.lower, f.lower, f.cod.ortho)


@given(composable(2))
def test_dagger_contravariant_involution(fs):
    f, g = fs
    assert gal.dagger(gal.dagger(f)) == f
    assert gal.dagger(gal.compose(g, f)) == gal.compose(gal.dagger(f), gal.dagger(g))


@given(composable(1))
def test_identity_neutral_and_zero_absorbing(fs):
    (f,) = fs
    X, Y = f.dom, f.cod
    assert gal.compose(gal.identity(Y), f) == f == gal.compose(f, gal.identity(X))
    for W in map(oml.corpus, NAMES):
        assert gal.is_zero(gal.compose(gal.zero_mor(Y, W), f))


@pytest.mark.parametrize("X,Y,Z", [("2", "B2", "MO2"), ("MO2", "MO2", "B2"), ("B2", "MO2", "2")])
def test_comp_table_matches_compose(X, Y, Z):
    X, Y, Z = map(oml.corpus, (X, Y, Z))
    T = gal.comp_table(X, Y, Z)
    F, G, H = gal.homset(X, Y), gal.homset(Y, Z), gal.homset(X, Z)
    for gi, g in enumerate(G.mors):
        for fi, f in enumerate(F.mors):
            assert H.mors[T[gi, fi]] == gal.compose(g, f)


@pytest.mark.parametrize("name", ["zero", "2", "B2", "B3", "MO2", "mo(3)"])
def test_points(name):
    X = oml.corpus(name)
    pts = gal.enumerate_hom(oml.two(), X)
    assert len(pts) == len(X)
    assert {gal.point(X, a) for a in X} == set(pts)
    assert all(gal.unpoint(gal.point(X, a)) == a for a in X)
    with pytest.raises(DomainMismatch):
        gal.unpoint(gal.identity(oml.corpus("B2")))


def test_dagger_monos():
    L = oml.corpus("MO2")
    for a in L:
        assert gal.is_dagger_mono(gal.downset_embedding(L, a))[0]
    ok, wit = gal.is_dagger_mono(gal.zero_mor(oml.two(), L))
    assert not ok and wit == "1"


def test_biproduct_shapes():
    T = oml.two()
    bp = gal.biproduct(T, T)
    assert oml.find_iso(bp.object, oml.corpus("B2")) is not None
    assert len(gal.biproduct(oml.corpus("B2"), oml.corpus("MO2")).object) == 24
    assert gal.biproduct(oml.corpus("MO2"), oml.corpus("MO2")).object.orthomodular


def test_cotuple_mismatch():
    T, B = oml.two(), oml.corpus("B2")
    with pytest.raises(DomainMismatch):
        gal.cotuple(gal.identity(T), gal.identity(B))


def test_check_galois_constant_zero_lower_on_b2():
    B = oml.corpus("B2")
    f = gal.GalMor(B, B, [B.bottom] * len(B), [B.top] * len(B))
    rep = gal.check_galois(f)
    assert not rep.passed
    # every y > 0 breaks the adjunction at x = 0, since f_*(0) must be 1
    assert rep.failures()[0].witness == ("0", "a")
    lo, up = f.lower, f.upper
    x, y = B.elem("0"), B.elem("1")
    assert B.leq[x][up[y]] and not B.leq[y][lo[x]]
