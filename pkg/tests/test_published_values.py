"""Values stated outright in the literature on these constructions."""
from omlkit import dkc, foulis, galois as gal, karoubi as kar, kernels as ker, oml


def test_zero_morphism_tables_are_constantly_top():
    X, Y = oml.corpus("MO2"), oml.corpus("B2")
    z = gal.zero_mor(X, Y)
    assert z.lower_of("0") == Y.top
    assert set(z.lower) == {Y.top} and set(z.upper) == {X.top}


def test_point_tables():
    X = oml.corpus("MO2")
    T = oml.two()
    p = gal.point(X, "a")
    assert p.lower == (X.top, X.elem("a'"))
    assert gal.point(X, X.top).lower[T.top] == X.bottom


def test_coprojection_lower_table():
    T = oml.two()
    bp = gal.biproduct(T, T)
    P = bp.object
    assert P.labels[bp.k1.lower[T.top]] == "(0|1)"
    assert all(bp.k1.lower[x] == bp.pair(T.ortho[x], T.top) for x in T)


def test_cokernel_of_downset_embedding_lands_in_complement():
    X = oml.corpus("MO2")
    for a in X:
        c = ker.cokernel(gal.downset_embedding(X, a))
        assert c.cod == oml.downset(X, X.ortho[a])


def test_finrel_sai_example():
    R = dkc.rel(2, 1, [(0, 0)])
    D = dkc.FinRel(2)
    K, k = D.kernel(R)
    assert k == D.inclusion(2, [1])
    assert dkc.sai_rel(R) == dkc.rel(2, 2, [(1, 1)])


def test_zero_object_has_one_map_in():
    S = foulis.end_foulis(oml.two())
    zero = kar.KarObj(S, S.zero)
    for t in kar.kar_objects(S):
        assert [f.elem for f in kar.kar_hom(S, zero, t)] == [S.zero]
        assert [f.elem for f in kar.kar_hom(S, t, zero)] == [S.zero]


def test_top_of_k_s_is_s():
    S = foulis.end_foulis(oml.corpus("B2"))
    for s in kar.kar_objects(S):
        L = kar.k_lattice(S, s)
        assert kar.k_elements(S, s)[L.top] == s.idem
