"""The sixteen acceptance criteria, each returning a Report.

Shared by ``omlkit verify-all`` and the acceptance test module.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import category as cat
from . import dkc, foulis, galois as gal, karoubi as kar, kernels as ker, oml
from .errors import BudgetExceeded, OmlkitError
from .galois import DEFAULT_BUDGET
from .report import Report

AXIOM_CORPUS = ("boolean(1)", "boolean(2)", "boolean(3)", "mo(2)", "mo(3)")
KSUB_CORPUS = ("zero", "boolean(1)", "boolean(2)", "boolean(3)", "mo(2)", "mo(3)")
SMALL = ("boolean(1)", "boolean(2)", "mo(2)")
ZPOOL = ("boolean(1)", "boolean(2)")


@dataclass
class Config:
    budget: int = DEFAULT_BUDGET
    # lattices asserted orthomodular by criteria 1, 3, 4 and 7
    corpus: Optional[Sequence[str]] = None

    def lattices(self, default: Sequence[str]) -> list[oml.Oml]:
        return [oml.corpus(n) for n in (self.corpus or default)]


def _L(names: Sequence[str]) -> list[oml.Oml]:
    return [oml.corpus(n) for n in names]


# 1 ------------------------------------------------------------------------

def c01_axioms(cfg: Config) -> Report:
    rep = Report("ortholattice and orthomodular axioms")
    for L in cfg.lattices(AXIOM_CORPUS):
        rep.extend(oml.check_ortholattice(L), f"{L.name}: ")
        rep.extend(oml.check_orthomodular(L), f"{L.name}: ")
    H = oml.corpus("hexagon")
    rep.extend(oml.check_ortholattice(H), "HEX: ")
    om = oml.check_orthomodular(H)
    first = om.checks[0]
    a, b = H.elem("a"), H.elem("b")
    rep.add("HEX fails orthomodularity", not om.passed, None if not om.passed else ("HEX",))
    rep.add("HEX witness is a < b", first.witness == ("a", "b"), first.witness)
    v = H.join(a, H.meet(H.perp(a), b))
    rep.add("HEX: a ∨ (a^⊥ ∧ b) = a", v == a, (H.labels[v],), note=f"first witness {first.witness}")
    rep.add("HEX: three conditions agree", om.check("three conditions agree").passed)
    return rep


# 2 ------------------------------------------------------------------------

def _dagger_index(X, Y) -> np.ndarray:
    """Position in Hom(Y,X) of the dagger of each member of Hom(X,Y)."""
    H, R = gal.homset(X, Y), gal.homset(Y, X)
    ups = np.array([f.upper for f in H.mors], dtype=np.int16).reshape(len(H), len(Y))
    return R.locate(ups)


def category_laws(objs: Sequence[oml.Oml], budget: int) -> Report:
    rep = Report("category and dagger laws")
    for X in objs:
        for Y in objs:
            gal.enumerate_hom(X, Y, budget)
    w_assoc = w_id = w_dag = w_inv = None
    for X, Y, Z in itertools.product(objs, repeat=3):
        T_xyz = gal.comp_table(X, Y, Z)
        d_xy, d_yz, d_xz = _dagger_index(X, Y), _dagger_index(Y, Z), _dagger_index(X, Z)
        T_zyx = gal.comp_table(Z, Y, X)
        lhs = d_xz[T_xyz]                                   # (g∘f)†
        rhs = T_zyx[d_xy[None, :], d_yz[:, None]]          # f†∘g†
        if w_dag is None and not np.array_equal(lhs, rhs):
            g, f = np.argwhere(lhs != rhs)[0]
            w_dag = (gal.homset(Y, Z).mors[g].label(), gal.homset(X, Y).mors[f].label())
        for W in objs:
            if w_assoc is not None:
                break
            T_xzw, T_yzw, T_xyw = gal.comp_table(X, Z, W), gal.comp_table(Y, Z, W), gal.comp_table(X, Y, W)
            for h in range(T_yzw.shape[0]):
                a = T_xzw[h][T_xyz]                         # h∘(g∘f), indexed [g, f]
                b = T_xyw[T_yzw[h]]                         # (h∘g)∘f
                if not np.array_equal(a, b):
                    g, f = np.argwhere(a != b)[0]
                    w_assoc = tuple(m.label() for m in (gal.homset(Z, W).mors[h],
                                                        gal.homset(Y, Z).mors[g],
                                                        gal.homset(X, Y).mors[f]))
                    break
    for X, Y in itertools.product(objs, repeat=2):
        idx, idy = gal.identity(X), gal.identity(Y)
        for f in gal.enumerate_hom(X, Y, budget):
            if w_id is None and (gal.compose(idy, f) != f or gal.compose(f, idx) != f):
                w_id = (f.label(),)
            if w_inv is None and gal.dagger(gal.dagger(f)) != f:
                w_inv = (f.label(),)
            if not gal.check_galois(f).passed:
                w_inv = (f.label(), "not Galois")
    rep.add("h ∘ (g ∘ f) = (h ∘ g) ∘ f", w_assoc is None, w_assoc)
    rep.add("id ∘ f = f = f ∘ id", w_id is None, w_id)
    rep.add("(g ∘ f)† = f† ∘ g†", w_dag is None, w_dag)
    rep.add("f†† = f", w_inv is None, w_inv)
    bad = next((X.name for X in objs if gal.dagger(gal.identity(X)) != gal.identity(X)), None)
    rep.add("id† = id", bad is None, bad)
    return rep


def c02_omlatgal_dkc(cfg: Config) -> Report:
    rep = Report("OMLatGal is a dagger kernel category")
    objs, zpool = _L(SMALL), _L(ZPOOL)
    wit = None
    total = 0
    for X, Y in itertools.product(objs, repeat=2):
        for f in gal.enumerate_hom(X, Y, cfg.budget):
            total += 1
            r = ker.verify_kernel_universal(f, zpool, cfg.budget)
            if not r.passed and wit is None:
                c = r.failures()[0]
                wit = (f.label(), c.name) + tuple(c.witness or ())
    rep.add("kernel universal property for every f", wit is None, wit, note=f"{total} maps")
    rep.extend(category_laws(objs, cfg.budget))
    return rep


# 3, 4 ---------------------------------------------------------------------

def c03_ksub_iso(cfg: Config) -> Report:
    rep = Report("KSub(X) = X")
    targets = _L(SMALL)
    for X in cfg.lattices(KSUB_CORPUS):
        rep.extend(ker.ksub_lattice(X, targets, cfg.budget), f"{X.name}: ")
    return rep


def c04_points(cfg: Config) -> Report:
    rep = Report("points and the opclassifier")
    targets = _L(SMALL)
    for X in cfg.lattices(KSUB_CORPUS):
        rep.extend(ker.char_iso(X, targets, cfg.budget), f"{X.name}: ")
        wit = next(((f.label(), X.labels[a]) for Y in targets for f in gal.enumerate_hom(X, Y, cfg.budget)
                    for a in X
                    if gal.compose(f, gal.point(X, a)) != gal.point(Y, Y.ortho[f.lower[a]])), None)
        rep.add(f"{X.name}: f ∘ point(a) = point(f_*(a)^⊥)", wit is None, wit)
    return rep


# 5 ------------------------------------------------------------------------

def biproduct_report(X1, X2, targets, budget) -> Report:
    bp = gal.biproduct(X1, X2)
    rep = Report(f"{X1.name} ⊕ {X2.name}")
    rep.add("κ1, κ2 dagger monos", gal.is_dagger_mono(bp.k1)[0] and gal.is_dagger_mono(bp.k2)[0])
    rep.add("π_i ∘ κ_i = id", gal.compose(bp.p1, bp.k1) == gal.identity(X1)
            and gal.compose(bp.p2, bp.k2) == gal.identity(X2))
    rep.add("π_j ∘ κ_i = 0 (i != j)", gal.is_zero(gal.compose(bp.p2, bp.k1))
            and gal.is_zero(gal.compose(bp.p1, bp.k2)))
    for Y in targets:
        legs = Counter((gal.compose(h, bp.k1), gal.compose(h, bp.k2))
                       for h in gal.enumerate_hom(bp.object, Y, budget))
        wit = None
        for f1 in gal.enumerate_hom(X1, Y, budget):
            for f2 in gal.enumerate_hom(X2, Y, budget):
                c = gal.cotuple(f1, f2, bp)
                ok = (gal.check_galois(c).passed and gal.compose(c, bp.k1) == f1
                      and gal.compose(c, bp.k2) == f2 and legs[f1, f2] == 1)
                if not ok and wit is None:
                    wit = (f1.label(), f2.label(), legs[f1, f2])
        rep.add(f"cotuple exists and is unique into {Y.name}", wit is None, wit)
    return rep


def c05_biproducts(cfg: Config) -> Report:
    rep = Report("biproducts")
    objs = _L(ZPOOL)
    for X1, X2 in itertools.product(objs, repeat=2):
        rep.extend(biproduct_report(X1, X2, objs, cfg.budget), f"{X1.name}⊕{X2.name}: ")
    two = oml.two()
    iso = oml.find_iso(gal.biproduct(two, two).object, oml.corpus("B2"))
    rep.add("2 ⊕ 2 = B2", iso is not None, None if iso else ("no isomorphism",))
    return rep


# 6 ------------------------------------------------------------------------

FACTOR_CORPUS = ("zero", "boolean(1)", "boolean(2)", "boolean(3)", "mo(2)", "mo(3)")


def factorization_report(f) -> Optional[str]:
    F = ker.factorize(f)
    if gal.compose_all(F.i, F.m, F.j_dag) != f:
        return "f != i ∘ m ∘ j†"
    if gal.compose(F.i, F.e) != f:
        return "f != i ∘ e"
    if gal.compose(F.m, F.j_dag) != F.e:
        return "e != m ∘ j†"
    if not ker.is_zero_epi(F.e):
        return "e not zero-epi"
    if not (ker.is_zero_epi(F.m) and ker.is_zero_mono(F.m)):
        return "m not zero-epi and zero-mono"
    if not gal.is_dagger_mono(F.i)[0]:
        return "i not a dagger mono"
    return None


def c06_factorisation(cfg: Config) -> Report:
    rep = Report("zero-epi/kernel factorisation")
    for X, Y in itertools.product(_L(FACTOR_CORPUS), repeat=2):
        wit = next(((f.label(), why) for f in gal.enumerate_hom(X, Y, cfg.budget)
                    if (why := factorization_report(f)) is not None), None)
        rep.add(f"{X.name} -> {Y.name}", wit is None, wit)
    return rep


# 7 ------------------------------------------------------------------------

SASAKI_CORPUS = ("zero", "boolean(1)", "boolean(2)", "boolean(3)", "boolean(4)", "mo(2)", "mo(3)")


def c07_sasaki(cfg: Config) -> Report:
    rep = Report("Sasaki connectives")
    for L in cfg.lattices(SASAKI_CORPUS):
        rep.extend(ker.sasaki_report(L), f"{L.name}: ")
    return rep


# 8 ------------------------------------------------------------------------

def broken_fsgs() -> list[foulis.Fsg]:
    """Three semigroups that violate the Foulis axioms in different places."""
    idem = foulis.make_fsg("{1,z} with ′z=z", ["1", "z"], [[0, 1], [1, 1]], 0, [0, 1], [1, 1])
    group = foulis.make_fsg("Z2 with ′=1", ["1", "g"], [[0, 1], [1, 0]], 0, [0, 1], [0, 0])
    # B2 under meet, with ′p = 0 instead of its complement
    labels = ["0", "p", "q", "1"]
    meet = [[a & b for b in range(4)] for a in range(4)]
    b2 = foulis.make_fsg("B2 meet with ′p=0", labels, meet, 3, [0, 1, 2, 3], [3, 0, 1, 0])
    return [idem, group, b2]


def fsg_fixtures(budget: int) -> list[foulis.Fsg]:
    good = [foulis.end_foulis(oml.corpus(n), budget) for n in SMALL]
    labels = ["0", "p", "q", "1"]
    meet = [[a & b for b in range(4)] for a in range(4)]
    b2 = foulis.make_fsg("B2 meet", labels, meet, 3, [0, 1, 2, 3], [3, 2, 1, 0])
    return good + [foulis.trivial_fsg(), b2] + broken_fsgs()


def c08_foulis(cfg: Config) -> Report:
    rep = Report("Foulis axioms")
    for n in SMALL:
        S = foulis.end_foulis(oml.corpus(n), cfg.budget)
        rep.add(f"{S.name} satisfies (1)-(4)", foulis.check_foulis(S).passed)
        rep.add(f"{S.name} satisfies (1)-(3), (4′)", foulis.check_foulis_alt(S).passed)
    for S in fsg_fixtures(cfg.budget):
        a = foulis.check_foulis(S).passed
        b = foulis.check_foulis_alt(S)
        rep.add(f"{S.name}: (4) and (4′) verdicts agree", b.check("verdict agrees with axioms (1)-(4)").passed,
                None, note=f"verdict {'pass' if a else 'fail'}")
    for S in broken_fsgs():
        rep.add(f"{S.name} is rejected", not foulis.check_foulis(S).passed)
    G = dkc.OMLatGal(_L(SMALL))
    for n in SMALL:
        X = oml.corpus(n)
        S = foulis.end_foulis(X, cfg.budget)
        T = foulis.end_foulis_generic(G, X, cfg.budget)
        same = (S.carrier == T.carrier and np.array_equal(S.sai, T.sai)
                and np.array_equal(S.mul, T.mul))
        rep.add(f"{S.name}: lattice ′ = kernel-effect ′", same)
    R = dkc.FinRel(2)
    T = foulis.end_foulis_generic(R, 2, cfg.budget)
    ok = all(T.carrier[int(T.sai[i])] == dkc.sai_rel(r) for i, r in enumerate(T.carrier))
    rep.add("FinRel End(2): kernel-effect ′R = {(x,x) : no y with R(x,y)}", ok and len(T) == 16)
    rep.add("FinRel End(2) satisfies (1)-(4)", foulis.check_foulis(T).passed)
    return rep


# 9, 10, 11 ----------------------------------------------------------------

def c09_karoubi_dkc(cfg: Config) -> Report:
    rep = Report("Karoubi envelope of a Foulis semigroup")
    for n in SMALL:
        S = foulis.end_foulis(oml.corpus(n), cfg.budget)
        rep.extend(kar.verify_karoubi_fsg(S, cfg.budget), f"{S.name}: ")
    return rep


def c10_k_lattices(cfg: Config) -> Report:
    rep = Report("K_s lattices")
    for n in SMALL:
        X = oml.corpus(n)
        S = foulis.end_foulis(X, cfg.budget)
        for s in kar.kar_objects(S):
            r1 = kar.k_lattice_report(S, s)
            r2 = kar.ksub_iso_check(S, s, cfg.budget)
            wit = None if r1.passed and r2.passed else tuple(c.name for c in r1.failures() + r2.failures())
            rep.add(f"{S.name}, s={S.labels[s.idem]}", r1.passed and r2.passed, wit)
        K, iso = kar.roundtrip(X, cfg.budget)
        rep.add(f"K_1(End({X.name})) = {X.name}", iso is not None, None if iso else (len(K),),
                note=" ".join(f"{K.labels[i]}->{X.labels[j]}" for i, j in enumerate(iso)) if iso else "")
    return rep


def c11_endo(cfg: Config) -> Report:
    rep = Report("End(s) Foulis semigroups")
    for n in SMALL:
        S = foulis.end_foulis(oml.corpus(n), cfg.budget)
        for s in kar.kar_objects(S):
            E = kar.endo_foulis(S, s)
            ok = foulis.check_foulis(E).passed and foulis.check_foulis_alt(E).passed
            rep.add(f"End_{S.labels[s.idem]} in {S.name}", ok, None if ok else (len(E),))
        E1 = kar.endo_foulis(S, kar.KarObj(S, S.unit))
        rep.add(f"End_1 = {S.name}", E1.same_tables(S))
    return rep


# 12 -----------------------------------------------------------------------

def c12_generic_karoubi(cfg: Config) -> Report:
    rep = Report("Karoubi envelope of FinRel(2)")
    R = dkc.FinRel(2)
    E = kar.GenericKaroubi(R, cfg.budget)
    pers = {(X, r) for X in R.objects() for r in R.hom(X, X, cfg.budget) if kar.is_per(r)}
    objs = {(o.base, o.idem) for o in E.objects()}
    rep.add("objects are exactly the PERs", objs == pers, None if objs == pers else (len(objs), len(pers)),
            note=f"{len(pers)} PERs")
    try:
        for f in (f for X in E.objects() for Y in E.objects() for f in E.hom(X, Y, cfg.budget)):
            E.kernel(f)
        rep.add("kernel objects (K, k†∘s∘k) are self-adjoint idempotents", True)
    except OmlkitError as e:
        rep.add("kernel objects (K, k†∘s∘k) are self-adjoint idempotents", False, e.witness)
    rep.extend(cat.verify_interface(E, None, cfg.budget))
    rep.extend(cat.verify_kernel_universal(E, E.objects(), E.objects(), cfg.budget))
    rep.extend(kar.embedding_check(E, cfg.budget))
    rep.extend(kar.effect_functor_check(R, None, cfg.budget), "effect functor: ")
    return rep


# 13 -----------------------------------------------------------------------

def c13_ksub_functor(cfg: Config) -> Report:
    rep = Report("KSub functor")
    R = dkc.FinRel(2)
    G = dkc.OMLatGal(_L(SMALL))
    rep.extend(dkc.verify_ksub_preservation(R, None, cfg.budget), "FinRel: ")
    rep.extend(dkc.verify_ksub_preservation(G, None, cfg.budget), "OMLatGal: ")
    wit = next((G.mor_label(f) for X in G.objects() for Y in G.objects()
                for f in G.hom(X, Y, cfg.budget) if cat.ksub_functor(G, f, cfg.budget).lower != f.lower), None)
    rep.add("OMLatGal: KSub(f) = f under X = KSub(X)", wit is None, wit)
    for X1, X2 in [(0, 1), (1, 1), (1, 2), (2, 1)]:
        rep.extend(dkc.biproduct_preservation(R, X1, X2, _L(ZPOOL), cfg.budget), f"FinRel {X1}+{X2}: ")
    for X1, X2 in itertools.product(_L(ZPOOL), repeat=2):
        bp = gal.biproduct(X1, X2)
        ok = all(cat.ksub_functor(G, k, cfg.budget).lower == k.lower for k in (bp.k1, bp.k2))
        rep.add(f"OMLatGal: KSub(κ_i) = κ_i for {X1.name}⊕{X2.name}", ok)
    for X in R.objects():
        for m in R.ksubs(X):
            r = dkc.kernels_change_of_base(R, m, cfg.budget)
            rep.add(f"FinRel change of base {R.sub_label(m)} in {X}", r.passed,
                    None if r.passed else tuple(c.name for c in r.failures()))
    for X in G.objects():
        for a in X:
            r = dkc.kernels_change_of_base(G, gal.downset_embedding(X, a), cfg.budget)
            rep.add(f"OMLatGal change of base ↓{X.labels[a]} in {X.name}", r.passed,
                    None if r.passed else tuple(c.name for c in r.failures()))
    return rep


# 14 -----------------------------------------------------------------------

def c14_boolean(cfg: Config) -> Report:
    rep = Report("Booleanness")
    G = dkc.OMLatGal(_L(("boolean(1)", "boolean(2)", "boolean(3)", "mo(2)")))
    for n in ("boolean(1)", "boolean(2)", "boolean(3)"):
        X = oml.corpus(n)
        rep.extend(dkc.check_boolean_dkc(G, X, cfg.budget), f"{X.name}: ")
    R = dkc.FinRel(2)
    for X in R.objects():
        rep.extend(dkc.check_boolean_dkc(R, X, cfg.budget), f"FinRel {X}: ")
    r = dkc.check_boolean_dkc(G, oml.corpus("mo(2)"), cfg.budget)
    w = r.failures()[0].witness if not r.passed else None
    rep.add("MO2 is not Boolean", not r.passed, None if not r.passed else ("passed",),
            note=f"witness m={w[0]}, n={w[1]}" if w else "")
    return rep


# 15 -----------------------------------------------------------------------

def c15_powerset(cfg: Config) -> Report:
    rep = Report("powerset adjunction")
    for A in (0, 1, 2):
        for X in _L(SMALL):
            rep.extend(dkc.adjunction_check(A, X, cfg.budget), f"|A|={A}, {X.name}: ")
            for B in (0, 1, 2):
                r = dkc.free_functor_check(A, B, X, cfg.budget)
                rep.add(f"F on {A} -> {B}, {X.name}", r.passed,
                        None if r.passed else tuple(c.name for c in r.failures()))
        rep.extend(dkc.graph_factorization_check(A, cfg.budget), f"|A|={A}: ")
    return rep


# 16 -----------------------------------------------------------------------

def c16_generators(cfg: Config) -> Report:
    rep = Report("generators")
    G = dkc.OMLatGal(_L(SMALL))
    rep.extend(cat.check_generator(G, oml.two(), G.objects(), cfg.budget), "OMLatGal, 2: ")
    for n in ("boolean(1)", "mo(2)"):
        S = foulis.end_foulis(oml.corpus(n), cfg.budget)
        K = kar.KaroubiFsg(S)
        one = kar.KarObj(S, S.unit)
        rep.extend(cat.check_generator(K, one, K.objects(), cfg.budget), f"{K.name}, 1: ")
        wit = next((str(f) for s in K.objects() for t in K.objects() for f in K.hom(s, t)
                    if K.compose(f, kar.KarMor(one, s, s.idem)) != f.__class__(one, t, f.elem)), None)
        rep.add(f"{K.name}: f ∘ s = f read as a point 1 -> t", wit is None, wit)
    R = dkc.FinRel(2)
    rep.extend(cat.check_generator(R, 1, R.objects(), cfg.budget), "FinRel, singleton: ")
    return rep


CRITERIA: list[tuple[int, str, Callable[[Config], Report]]] = [
    (1, "axiom suite", c01_axioms),
    (2, "OMLatGal dagger kernel category", c02_omlatgal_dkc),
    (3, "KSub(X) = X", c03_ksub_iso),
    (4, "points and opclassifier", c04_points),
    (5, "biproducts", c05_biproducts),
    (6, "factorisation", c06_factorisation),
    (7, "Sasaki identities", c07_sasaki),
    (8, "Foulis axioms", c08_foulis),
    (9, "Karoubi(S) dagger kernel category", c09_karoubi_dkc),
    (10, "K_s lattices and round-trip", c10_k_lattices),
    (11, "End(s) Foulis", c11_endo),
    (12, "generic Karoubi envelope", c12_generic_karoubi),
    (13, "KSub functor", c13_ksub_functor),
    (14, "Booleanness", c14_boolean),
    (15, "powerset adjunction", c15_powerset),
    (16, "generators", c16_generators),
]


def run_criterion(cid: int, cfg: Optional[Config] = None) -> Report:
    """Run one criterion; library errors other than budget overruns become failures."""
    cfg = cfg or Config()
    _, title, fn = CRITERIA[cid - 1]
    try:
        rep = fn(cfg)
    except BudgetExceeded:
        raise
    except OmlkitError as e:
        rep = Report(title)
        rep.add(type(e).__name__, False, e.witness if isinstance(e.witness, tuple) else (str(e),),
                note=str(e))
    rep.subject = f"[{cid:2d}] {title}"
    return rep
