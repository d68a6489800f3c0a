import numpy as np
import pytest
from hypothesis import given, strategies as st

from omlkit import dkc, foulis, galois as gal, oml
from omlkit.acceptance import broken_fsgs
from omlkit.errors import InvNotInvolutive, NotAssociative, NoUnit, SaiUnderivable


@pytest.fixture(scope="module")
def ends():
    return {n: foulis.end_foulis(oml.corpus(n)) for n in ["zero", "2", "B2", "MO2"]}


def test_sizes_match_hom_counts(ends):
    assert {n: len(S) for n, S in ends.items()} == {"zero": 1, "2": 2, "B2": 16, "MO2": 234}


@pytest.mark.parametrize("name", ["zero", "2", "B2", "MO2"])
def test_end_is_foulis(ends, name):
    S = ends[name]
    assert foulis.check_foulis(S).passed
    alt = foulis.check_foulis_alt(S)
    assert alt.passed and alt.check("verdict agrees with axioms (1)-(4)").passed


@pytest.mark.parametrize("name", ["2", "B2", "MO2"])
def test_formula_sai_is_the_derived_sai(ends, name):
    S = ends[name]
    derived = foulis.derive_sai(S.mul, S.inv, S.unit)
    assert np.array_equal(derived, S.sai)
    for i, s in enumerate(S.carrier):
        assert S.carrier[S.sai[i]].lower == tuple(foulis.sai_formula(s))


def test_end_two_tables(ends):
    # End(2) = {id, 0}: identity has lower [1,0], the zero map [1,1]
    S = ends["2"]
    assert [S.carrier[i].lower for i in range(2)] == [(1, 0), (1, 1)]
    assert S.unit == 0 and S.zero == 1
    assert S.sai.tolist() == [1, 0]


def test_broken_fixtures_fail_where_expected():
    idem, group, b2 = broken_fsgs()
    assert [c.name for c in foulis.check_foulis(idem).failures()] == \
        ["(4) s·x = 0 iff x = ′s·y for some y"]
    # ′ ≡ 1 makes 1 the zero, so both absorption and annihilation break
    assert [c.name for c in foulis.check_foulis(group).failures()] == \
        ["(3) 0·s = 0 = s·0", "(4) s·x = 0 iff x = ′s·y for some y"]
    assert [c.name for c in foulis.check_foulis(b2).failures()] == \
        ["(4) s·x = 0 iff x = ′s·y for some y"]
    for S in (idem, group, b2):
        alt = foulis.check_foulis_alt(S)
        assert not alt.passed
        assert alt.check("verdict agrees with axioms (1)-(4)").passed


def test_meet_semilattice_with_complement_is_foulis():
    meet = [[a & b for b in range(4)] for a in range(4)]
    S = foulis.make_fsg("B2", ["0", "p", "q", "1"], meet, 3, [0, 1, 2, 3])
    assert S.sai.tolist() == [3, 2, 1, 0]
    assert foulis.check_foulis(S).passed and foulis.check_foulis_alt(S).passed


def test_trivial():
    S = foulis.trivial_fsg()
    assert len(S) == 1 and S.zero == S.unit
    assert foulis.check_foulis(S).passed


def test_strict_construction_errors():
    with pytest.raises(NotAssociative) as e:
        foulis.make_fsg("bad", ["1", "x", "y"], [[0, 1, 2], [1, 2, 0], [2, 1, 1]], 0, [0, 1, 2])
    assert len(e.value.witness) == 3
    with pytest.raises(NoUnit):
        foulis.make_fsg("bad", ["e", "x"], [[1, 1], [1, 1]], 0, [0, 1])
    with pytest.raises(InvNotInvolutive):
        foulis.make_fsg("bad", ["1", "x", "y"], [[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, [0, 2, 0])


def test_build_fsg_missing_unit():
    with pytest.raises(NoUnit):
        foulis.build_fsg({"elements": ["1"], "mul": [["1"]], "inv": {"1": "1"}})


def test_sai_underivable_for_group():
    # Z2 has no zero, so no annihilators to generate
    with pytest.raises(SaiUnderivable):
        foulis.make_fsg("Z2", ["1", "g"], [[0, 1], [1, 0]], 0, [0, 1])


def test_nonstrict_keeps_broken_tables():
    S = foulis.make_fsg("bad", ["1", "x", "y"], [[0, 1, 2], [1, 2, 0], [2, 1, 1]], 0,
                        [0, 1, 2], sai=[0, 0, 0], strict=False)
    rep = foulis.check_foulis(S)
    assert not rep.check("associative").passed
    assert len(rep.check("associative").witness) == 3


def test_generic_end_matches_lattice_end(ends):
    G = dkc.OMLatGal([oml.corpus("MO2")])
    T = foulis.end_foulis_generic(G, oml.corpus("MO2"))
    S = ends["MO2"]
    assert T.carrier == S.carrier
    assert np.array_equal(T.mul, S.mul) and np.array_equal(T.sai, S.sai)


def test_finrel_end_is_foulis():
    R = dkc.FinRel(2)
    S = foulis.end_foulis_generic(R, 2)
    assert len(S) == 16
    assert foulis.check_foulis(S).passed
    assert all(S.carrier[int(S.sai[i])] == dkc.sai_rel(r) for i, r in enumerate(S.carrier))


def test_conjugation_is_not_multiplicative():
    pool = [(oml.two(), oml.corpus("MO2")), (oml.corpus("MO2"), oml.two())]
    f, s, t = foulis.conjugation_defect(pool)
    assert (f.dom.name, f.cod.name) == ("MO2", "2")
    assert (f.label(), s.label(), t.label()) == ("[1,0,0,0,0,0]", "[1,0,0,0,1,0]", "[1,b,b,b,b,b]")
    # points of 2 are dagger monos, so conjugating by them is multiplicative
    assert foulis.conjugation_defect(pool[:1]) is None


mo2_elems = st.integers(0, 233)


@given(mo2_elems, mo2_elems)
def test_annihilator_identities(s, t):
    S = foulis.end_foulis(oml.corpus("MO2"))
    ps = int(S.sai[s])
    assert S.m(s, ps) == S.zero
    assert S.m(ps, ps) == ps and int(S.inv[ps]) == ps
    if S.m(s, t) == S.zero:
        assert S.m(ps, t) == t
    lhs = S.m(S.sai[S.m(S.sai[S.m(S.inv[t], S.inv[s])], s)], t)
    assert lhs == t


@given(mo2_elems, mo2_elems)
def test_involution_reverses_products(s, t):
    S = foulis.end_foulis(oml.corpus("MO2"))
    assert S.inv[S.m(s, t)] == S.m(S.inv[t], S.inv[s])
    assert gal.dagger(S.carrier[s]) == S.carrier[S.inv[s]]
