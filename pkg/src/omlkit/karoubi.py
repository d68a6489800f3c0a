"""Dagger Karoubi envelopes.

``KaroubiFsg(S)`` splits the self-adjoint idempotents of a Foulis semigroup;
``GenericKaroubi(D)`` does the same for the endomaps of a dagger kernel
category.  Both are dagger kernel categories in their own right.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .category import (
    DaggerKernelCategory,
    effect as cat_effect,
    factorizations,
    generic_ksubs,
    is_zero,
    ksub_lattice,
)
from .errors import DomainMismatch, HostMismatch, NotOrthomodular, OmlkitError
from .foulis import Fsg, make_fsg
from .galois import DEFAULT_BUDGET
from .oml import Oml, assemble, check_orthomodular, find_iso
from .report import Report


# -- envelope of a Foulis semigroup -----------------------------------------

@dataclass(frozen=True)
class KarObj:
    host: Fsg
    idem: int

    def __str__(self):
        return self.host.labels[self.idem]


@dataclass(frozen=True)
class KarMor:
    dom: KarObj
    cod: KarObj
    elem: int

    def __str__(self):
        return f"{self.dom}->{self.cod}:{self.dom.host.labels[self.elem]}"


def _same_host(S: Fsg, *objs: KarObj):
    for o in objs:
        if o.host is not S:
            raise HostMismatch(f"object {o} belongs to {o.host.name}, not {S.name}", (str(o),))


def kar_objects(S: Fsg) -> list[KarObj]:
    """Self-adjoint idempotents, in element order."""
    return [KarObj(S, s) for s in S.self_adjoint_idempotents()]


def _hom_elems(S: Fsg, s: int, t: int) -> np.ndarray:
    d = np.arange(len(S))
    return np.flatnonzero((S.mul[d, s] == d) & (S.mul[t, d] == d))


def kar_hom(S: Fsg, s: KarObj, t: KarObj) -> list[KarMor]:
    _same_host(S, s, t)
    return [KarMor(s, t, int(f)) for f in _hom_elems(S, s.idem, t.idem)]


def kar_compose(S: Fsg, g: KarMor, f: KarMor) -> KarMor:
    _same_host(S, f.dom, g.cod)
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose {f} with {g}", (str(f), str(g)))
    return KarMor(f.dom, g.cod, int(S.mul[g.elem, f.elem]))


def kar_dagger(S: Fsg, f: KarMor) -> KarMor:
    return KarMor(f.cod, f.dom, int(S.inv[f.elem]))


def kar_identity(S: Fsg, s: KarObj) -> KarMor:
    return KarMor(s, s, s.idem)


def kar_kernel(S: Fsg, f: KarMor) -> tuple[KarObj, KarMor]:
    """``s·′f`` as an object, with itself as the mono into s."""
    _same_host(S, f.dom)
    s = f.dom.idem
    k = int(S.mul[s, S.sai[f.elem]])
    K = KarObj(S, k)
    return K, KarMor(K, f.dom, k)


class KaroubiFsg(DaggerKernelCategory):
    def __init__(self, S: Fsg):
        super().__init__()
        self.S = S
        self.name = f"Karoubi({S.name})"
        self._objs = kar_objects(S)

    def obj(self, s) -> KarObj:
        return KarObj(self.S, self.S.elem(s))

    def objects(self):
        return list(self._objs)

    def hom(self, X, Y, budget=DEFAULT_BUDGET):
        return self.cached(("hom", X.idem, Y.idem), lambda: kar_hom(self.S, X, Y))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def compose(self, g, f):
        return kar_compose(self.S, g, f)

    def dagger(self, f):
        return kar_dagger(self.S, f)

    def identity(self, X):
        return kar_identity(self.S, X)

    def zero_object(self):
        return KarObj(self.S, self.S.zero)

    def zero(self, X, Y):
        return KarMor(X, Y, self.S.zero)

    def kernel(self, f):
        return kar_kernel(self.S, f)

    def ksubs(self, X, budget=DEFAULT_BUDGET):
        return [KarMor(KarObj(self.S, k), X, k) for k in k_elements(self.S, X)]

    def obj_label(self, X):
        return str(X)

    def mor_label(self, f):
        return str(f)

    def sub_label(self, m):
        return self.S.labels[m.elem]


def k_elements(S: Fsg, s: KarObj) -> list[int]:
    """``K_s = {s·′(t·s) : t ∈ S}``, deduplicated, in element order."""
    _same_host(S, s)
    v = S.mul[s.idem, S.sai[S.mul[:, s.idem]]]
    return sorted(set(int(x) for x in v))


def k_lattice(S: Fsg, s: KarObj) -> Oml:
    """The orthomodular lattice K_s, built from its own order and ortho formulas."""
    ks = k_elements(S, s)
    pos = {k: i for i, k in enumerate(ks)}
    mul, sai = S.mul, S.sai
    leq = [[int(mul[k2, k1]) == k1 for k2 in ks] for k1 in ks]

    def perp(k):
        return int(mul[s.idem, sai[k]])

    ortho = []
    for k in ks:
        p = perp(k)
        if p not in pos:
            raise NotOrthomodular(f"s·′k leaves K_s at k={S.labels[k]}", (S.labels[k],))
        ortho.append(pos[p])
    L = assemble(f"K_{S.labels[s.idem]}({S.name})", [S.labels[k] for k in ks], leq, ortho,
                 strict=False)
    for i, k1 in enumerate(ks):
        for j, k2 in enumerate(ks):
            m = perp(perp(int(mul[k1, sai[mul[sai[k2], k1]]])))
            if pos.get(m) != L.meet_tab[i][j]:
                raise NotOrthomodular("the meet formula disagrees with the order",
                                      (S.labels[k1], S.labels[k2]))
    if not L.orthomodular:
        rep = check_orthomodular(L)
        bad = rep.failures()[0]
        raise NotOrthomodular(f"K_s is not orthomodular: {bad.name}", bad.witness)
    return L


def k_lattice_report(S: Fsg, s: KarObj) -> Report:
    rep = Report(f"K_{S.labels[s.idem]}({S.name})")
    try:
        L = k_lattice(S, s)
    except NotOrthomodular as e:
        rep.add("K_s builds as an orthomodular lattice", False, e.witness)
        return rep
    rep.extend(check_orthomodular(L))
    ks = k_elements(S, s)
    mul, inv = S.mul, S.inv
    bad = next((k for k in ks if not (inv[k] == k and mul[k, k] == k
                                       and mul[k, s.idem] == k and mul[s.idem, k] == k)), None)
    rep.add("each k is a self-adjoint idempotent below s", bad is None,
            None if bad is None else (S.labels[bad],))
    rep.add("top of K_s is s", ks[L.top] == s.idem, None if ks[L.top] == s.idem else (S.labels[ks[L.top]],))
    bad = next((i for i in L if L.meet_tab[i][L.ortho[i]] != L.bottom), None)
    rep.add("k ∧ k^⊥ = 0", bad is None, None if bad is None else (L.labels[bad],))
    return rep


def ksub_iso_check(S: Fsg, s: KarObj, budget: int = DEFAULT_BUDGET) -> Report:
    """K_s against the kernel subobjects of s found by search."""
    D = KaroubiFsg(S)
    rep = Report(f"K_s = KSub(s) for s={S.labels[s.idem]} in {S.name}")
    ks = k_elements(S, s)
    found = generic_ksubs(D, s, budget)
    effs = sorted({cat_effect(D, m).elem for m in found})
    rep.add("kernels of maps out of s have effects exactly K_s", effs == ks,
            None if effs == ks else (len(effs), len(ks)))
    monos = {k: KarMor(KarObj(S, k), s, k) for k in ks}
    wit = None
    for k1 in ks:
        for k2 in ks:
            n = len(factorizations(D, monos[k1], monos[k2], budget))
            algebraic = int(S.mul[k2, k1]) == k1
            if n > 1 or (n == 1) != algebraic:
                wit = (S.labels[k1], S.labels[k2], n)
                break
        if wit:
            break
    rep.add("k1 = k2·k1 iff k1 factors uniquely through k2", wit is None, wit)
    rep.add("K_s has as many elements as KSub(s)", len(ks) == len(found),
            None if len(ks) == len(found) else (len(ks), len(found)))
    return rep


def endo_foulis(S: Fsg, s: KarObj) -> Fsg:
    """``End(s) = {t : s·t = t = t·s}`` with unit s and ``′t = s·′t·s``."""
    _same_host(S, s)
    elems = [int(t) for t in _hom_elems(S, s.idem, s.idem)]
    pos = {t: i for i, t in enumerate(elems)}
    e = np.array(elems)
    mul = np.vectorize(pos.get)(S.mul[np.ix_(e, e)])
    inv = [pos[int(S.inv[t])] for t in elems]
    sai = [pos[int(S.mul[S.mul[s.idem, S.sai[t]], s.idem])] for t in elems]
    return make_fsg(f"End_{S.labels[s.idem]}({S.name})", [S.labels[t] for t in elems],
                    mul.reshape(len(elems), len(elems)), pos[s.idem], inv, sai, strict=False)


def sai_lattice(S: Fsg) -> Oml:
    """``K_1``; its elements are exactly the values of ``′``."""
    one = KarObj(S, S.unit)
    L = k_lattice(S, one)
    values = sorted(set(int(x) for x in S.sai))
    if values != k_elements(S, one):
        raise OmlkitError("K_1 differs from the image of ′", ())
    return L


def verify_karoubi_fsg(S: Fsg, budget: int = DEFAULT_BUDGET) -> Report:
    """Zero object, kernels as dagger monos with unique mediation."""
    D = KaroubiFsg(S)
    objs = D.objects()
    rep = Report(f"Karoubi({S.name})")
    z = D.zero_object()
    bad = next((str(X) for X in objs if len(D.hom(X, z)) != 1 or len(D.hom(z, X)) != 1), None)
    rep.add("0 is a zero object", bad is None, bad)
    rep.add("0 is the only zero object", [X for X in objs
             if len(D.hom(X, X)) == 1] == [z])
    mul, inv = S.mul, S.inv
    failures = []
    for s in objs:
        for t in objs:
            for f in D.hom(s, t):
                K, k = D.kernel(f)
                if not (inv[K.idem] == K.idem and mul[K.idem, K.idem] == K.idem):
                    failures.append(("kernel object is a self-adjoint idempotent", str(f)))
                if int(mul[S.sai[f.elem], mul[s.idem, S.sai[f.elem]]]) != K.idem:
                    failures.append(("′f·s·′f = s·′f", str(f)))
                if D.compose(D.dagger(k), k) != D.identity(K):
                    failures.append(("kernel is a dagger mono", str(f)))
                if not is_zero(D, D.compose(f, k)):
                    failures.append(("f ∘ ker f = 0", str(f)))
                for r in objs:
                    cnt = Counter(D.compose(k, h) for h in D.hom(r, K))
                    for g in D.hom(r, s):
                        want = 1 if is_zero(D, D.compose(f, g)) else 0
                        if cnt.get(g, 0) != want:
                            failures.append(("unique mediation", str(f), str(g)))
                            break
    names = ["kernel object is a self-adjoint idempotent", "′f·s·′f = s·′f",
             "kernel is a dagger mono", "f ∘ ker f = 0", "unique mediation"]
    for name in names:
        w = next((fl[1:] for fl in failures if fl[0] == name), None)
        rep.add(name, w is None, w)
    return rep


def roundtrip(X: Oml, budget: int = DEFAULT_BUDGET):
    """X -> End(X) -> K_1; returns (K_1, isomorphism or None)."""
    from .foulis import end_foulis

    S = end_foulis(X, budget)
    K = sai_lattice(S)
    return K, find_iso(K, X)


# -- envelope of a dagger kernel category -----------------------------------

@dataclass(frozen=True)
class GKObj:
    base: object
    idem: object


@dataclass(frozen=True)
class GKMor:
    dom: GKObj
    cod: GKObj
    mor: object


class GenericKaroubi(DaggerKernelCategory):
    """Objects ``(X, s)`` with s a self-adjoint idempotent endomap of X."""

    def __init__(self, D: DaggerKernelCategory, budget: int = DEFAULT_BUDGET):
        super().__init__()
        self.D = D
        self.budget = budget
        self.name = f"Karoubi({D.name})"
        self._objs = []
        for X in D.objects():
            for s in D.hom(X, X, budget):
                if D.dagger(s) == s and D.compose(s, s) == s:
                    self._objs.append(GKObj(X, s))

    def embed(self, X) -> GKObj:
        return GKObj(X, self.D.identity(X))

    def embed_mor(self, f) -> GKMor:
        D = self.D
        return GKMor(self.embed(D.dom(f)), self.embed(D.cod(f)), f)

    def objects(self):
        return list(self._objs)

    def hom(self, X: GKObj, Y: GKObj, budget=DEFAULT_BUDGET):
        D = self.D

        def build():
            return [GKMor(X, Y, f) for f in D.hom(X.base, Y.base, budget)
                    if D.compose(f, X.idem) == f and D.compose(Y.idem, f) == f]

        return self.cached(("hom", X, Y), build)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def compose(self, g, f):
        if f.cod != g.dom:
            raise DomainMismatch("envelope morphisms are not composable", (str(f), str(g)))
        return GKMor(f.dom, g.cod, self.D.compose(g.mor, f.mor))

    def dagger(self, f):
        return GKMor(f.cod, f.dom, self.D.dagger(f.mor))

    def identity(self, X):
        return GKMor(X, X, X.idem)

    def zero_object(self):
        z = self.D.zero_object()
        return GKObj(z, self.D.identity(z))

    def zero(self, X, Y):
        return GKMor(X, Y, self.D.zero(X.base, Y.base))

    def kernel(self, f: GKMor):
        """``((K, k†∘s∘k), s∘k)`` with ``k = ker f`` in the base."""
        D = self.D
        X = f.dom
        K, k = D.kernel(f.mor)
        s2 = D.compose(D.dagger(k), D.compose(X.idem, k))
        if D.dagger(s2) != s2 or D.compose(s2, s2) != s2:
            raise OmlkitError("k†∘s∘k is not a self-adjoint idempotent", (D.mor_label(s2),))
        obj = GKObj(K, s2)
        return obj, GKMor(obj, X, D.compose(X.idem, k))

    def obj_label(self, X):
        return f"({self.D.obj_label(X.base)},{self.D.mor_label(X.idem)})"

    def mor_label(self, f):
        return f"{self.obj_label(f.dom)}->{self.obj_label(f.cod)}:{self.D.mor_label(f.mor)}"


def generic_dagger_karoubi(D: DaggerKernelCategory, budget: int = DEFAULT_BUDGET) -> GenericKaroubi:
    return GenericKaroubi(D, budget)


def is_per(R) -> bool:
    """Symmetric and transitive, for a FinRel endorelation."""
    p = R.pairs
    return (all((y, x) in p for x, y in p)
            and all((x, z) in p for x, y in p for y2, z in p if y == y2))


def embedding_check(E: GenericKaroubi, budget: int = DEFAULT_BUDGET) -> Report:
    """``X ↦ (X, id)`` preserves the dagger structure and kernels."""
    D = E.D
    rep = Report(f"embedding {D.name} -> {E.name}")
    objs = D.objects()
    homs = [f for X in objs for Y in objs for f in D.hom(X, Y, budget)]
    wit = next((D.mor_label(f) for f in homs
                if E.embed_mor(D.dagger(f)) != E.dagger(E.embed_mor(f))), None)
    rep.add("I(f†) = I(f)†", wit is None, wit)
    rep.add("I(0) is a zero object", E.embed(D.zero_object()) == E.zero_object())
    wit = next((D.mor_label(f) for f in homs if E.embed_mor(D.zero(D.dom(f), D.cod(f)))
                != E.zero(E.embed(D.dom(f)), E.embed(D.cod(f)))), None)
    rep.add("I(0_{X,Y}) = 0", wit is None, wit)

    def kernel_mismatch(f):
        K, k = D.kernel(f)
        K2, k2 = E.kernel(E.embed_mor(f))
        return K2 != E.embed(K) or k2 != E.embed_mor(k)

    wit = next((D.mor_label(f) for f in homs if kernel_mismatch(f)), None)
    rep.add("I(ker f) = ker I(f)", wit is None, wit)
    return rep


def effect_functor_check(D: DaggerKernelCategory, objs: Optional[Sequence] = None,
                         budget: int = DEFAULT_BUDGET) -> Report:
    """``m ↦ (X, m∘m†)``, ``f ↦ f∘⌐m¬`` from kernel subobjects into the envelope.

    f maps m into n when ``f∘m = n∘φ`` for some φ; since n is a dagger mono
    the only candidate is ``φ = n†∘f∘m``.
    """
    objs = list(D.objects() if objs is None else objs)
    E = GenericKaroubi(D, budget)
    rep = Report(f"effect functor on {D.name}")
    subs = [(X, m, cat_effect(D, m)) for X in objs for m in D.ksubs(X, budget)]

    def maps_into(f, m, n):
        fm = D.compose(f, m)
        return D.compose(n, D.compose(D.dagger(n), fm)) == fm

    maps = {}
    for i, (X, m, _) in enumerate(subs):
        for j, (Y, n, _) in enumerate(subs):
            maps[i, j] = [f for f in D.hom(X, Y, budget) if maps_into(f, m, n)]

    sl = D.sub_label
    w_mor = w_full = w_comp = None
    for (i, j), fs in maps.items():
        X, m, em = subs[i]
        Y, n, en = subs[j]
        images = {D.compose(f, em) for f in fs}
        if w_mor is None:
            w_mor = next(((sl(m), sl(n), D.mor_label(g)) for g in images
                          if D.compose(g, em) != g or D.compose(en, g) != g), None)
        kar = {h.mor for h in E.hom(GKObj(X, em), GKObj(Y, en), budget)}
        if w_full is None and kar != images:
            w_full = (sl(m), sl(n), len(kar), len(images))
    w_id = next((sl(m) for X, m, em in subs
                 if D.compose(D.identity(X), em) != E.identity(GKObj(X, em)).mor), None)
    for i, j, k in ((i, j, k) for i in range(len(subs)) for j in range(len(subs))
                    for k in range(len(subs))):
        if w_comp is not None:
            break
        em, en = subs[i][2], subs[j][2]
        for f in maps[i, j]:
            Ff = D.compose(f, em)
            bad = next((g for g in maps[j, k]
                        if D.compose(D.compose(g, en), Ff) != D.compose(D.compose(g, f), em)), None)
            if bad is not None:
                w_comp = (D.mor_label(f), D.mor_label(bad))
                break
    rep.add("f∘⌐m¬ is an envelope map ⌐m¬ -> ⌐n¬", w_mor is None, w_mor)
    rep.add("identities go to identities", w_id is None, w_id)
    rep.add("composition is preserved", w_comp is None, w_comp)
    rep.add("full: every envelope map arises", w_full is None, w_full)
    return rep
