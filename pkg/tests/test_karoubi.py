import pytest
from hypothesis import given, strategies as st

from oracles import self_adjoint_idempotents
from omlkit import category as cat, dkc, foulis, galois as gal, karoubi as kar, oml
from omlkit.errors import DomainMismatch, HostMismatch

NAMES = ["2", "B2", "MO2"]


@pytest.fixture(scope="module")
def ends():
    return {n: foulis.end_foulis(oml.corpus(n)) for n in NAMES}


@pytest.mark.parametrize("name", NAMES)
def test_objects_are_brute_force_sais(ends, name):
    S = ends[name]
    objs = kar.kar_objects(S)
    assert sorted(S.carrier[o.idem].lower for o in objs) == \
        sorted(self_adjoint_idempotents(oml.corpus(name)))


def test_object_counts(ends):
    # frozen from the brute-force oracle
    assert {n: len(kar.kar_objects(S)) for n, S in ends.items()} == {"2": 2, "B2": 5, "MO2": 9}


@pytest.mark.parametrize("name", NAMES)
def test_karoubi_is_dagger_kernel_category(ends, name):
    assert kar.verify_karoubi_fsg(ends[name]).passed


@pytest.mark.parametrize("name", NAMES)
def test_k_lattices(ends, name):
    S = ends[name]
    for s in kar.kar_objects(S):
        assert kar.k_lattice_report(S, s).passed
        assert kar.ksub_iso_check(S, s).passed


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip(name):
    X = oml.corpus(name)
    K, iso = kar.roundtrip(X)
    assert iso is not None and len(K) == len(X)
    assert all(X.ortho[iso[i]] == iso[K.ortho[i]] for i in K)


def test_k1_of_mo2_elements(ends):
    # K_1 is exactly the image of ′
    S = ends["MO2"]
    K = kar.sai_lattice(S)
    assert len(K) == 6
    assert set(K.labels) == {S.labels[int(v)] for v in S.sai}


@pytest.mark.parametrize("name", NAMES)
def test_endo_semigroups(ends, name):
    S = ends[name]
    for s in kar.kar_objects(S):
        E = kar.endo_foulis(S, s)
        assert foulis.check_foulis(E).passed and foulis.check_foulis_alt(E).passed
    assert kar.endo_foulis(S, kar.KarObj(S, S.unit)).same_tables(S)


def test_zero_object_endo_is_trivial(ends):
    S = ends["MO2"]
    E = kar.endo_foulis(S, kar.KarObj(S, S.zero))
    assert len(E) == 1


def test_host_mismatch(ends):
    S, T = ends["2"], ends["B2"]
    with pytest.raises(HostMismatch):
        kar.kar_hom(S, kar.KarObj(T, T.unit), kar.KarObj(S, S.unit))


def test_compose_mismatch(ends):
    S = ends["B2"]
    objs = kar.kar_objects(S)
    f = kar.kar_identity(S, objs[1])
    g = kar.kar_identity(S, objs[2])
    with pytest.raises(DomainMismatch):
        kar.kar_compose(S, g, f)


@given(st.data())
def test_kernel_composite_is_zero(data):
    S = foulis.end_foulis(oml.corpus("MO2"))
    D = kar.KaroubiFsg(S)
    s, t = data.draw(st.sampled_from(D.objects())), data.draw(st.sampled_from(D.objects()))
    homs = D.hom(s, t)
    f = data.draw(st.sampled_from(homs))
    K, k = D.kernel(f)
    assert cat.is_zero(D, D.compose(f, k))
    assert D.compose(D.dagger(k), k) == D.identity(K)


@pytest.mark.parametrize("name", ["2", "MO2"])
def test_unit_generates(ends, name):
    S = ends[name]
    K = kar.KaroubiFsg(S)
    assert cat.check_generator(K, kar.KarObj(S, S.unit), K.objects()).passed


def test_generic_envelope_of_finrel():
    R = dkc.FinRel(2)
    E = kar.GenericKaroubi(R)
    # PERs on sets of size 0, 1, 2
    assert len(E.objects()) == 1 + 2 + 5
    assert all(kar.is_per(o.idem) for o in E.objects())
    assert cat.verify_interface(E).passed
    assert cat.verify_kernel_universal(E, E.objects(), E.objects()).passed
    assert kar.embedding_check(E).passed


def test_is_per():
    r = dkc.rel(2, 2, [(0, 1), (1, 0)])
    assert not kar.is_per(r)
    assert kar.is_per(dkc.rel(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]))
    assert kar.is_per(dkc.rel(2, 2, []))


def test_effect_functor_finrel():
    assert kar.effect_functor_check(dkc.FinRel(2)).passed


def test_effect_functor_omlatgal():
    G = dkc.OMLatGal([oml.two(), oml.corpus("B2")])
    assert kar.effect_functor_check(G).passed


def test_generic_envelope_over_omlatgal_points():
    G = dkc.OMLatGal([oml.two(), oml.corpus("MO2")])
    E = kar.GenericKaroubi(G)
    assert len(E.objects()) == 2 + 9
    assert kar.embedding_check(E).passed
    assert cat.verify_interface(E, [E.embed(oml.two()), E.embed(oml.corpus("MO2"))]).passed


def test_embedded_homs_match_base():
    G = dkc.OMLatGal([oml.corpus("B2")])
    E = kar.GenericKaroubi(G)
    X = E.embed(oml.corpus("B2"))
    assert [h.mor for h in E.hom(X, X)] == gal.enumerate_hom(oml.corpus("B2"), oml.corpus("B2"))
