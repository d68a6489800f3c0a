"""Concrete dagger kernel categories and the KSub functor.

* ``FinRel``: finite sets ``{0..n-1}`` and relations.
* ``OMLatGal``: corpus lattices and Galois connections.

The Karoubi envelopes live in :mod:`omlkit.karoubi`.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import galois as gal
from . import kernels as ker
from .category import (
    DaggerKernelCategory,
    check_generator,
    cokernel,
    direct_image,
    effect,
    factorizations,
    inverse_image,
    is_zero,
    ksub_functor,
    ksub_lattice,
    perp,
    sub_le,
)
from .errors import BudgetExceeded, DomainMismatch, NotGalois
from .galois import DEFAULT_BUDGET, GalMor
from .oml import Oml, corpus, find_iso, from_tables
from .report import Report


# -- finite relations -------------------------------------------------------

@dataclass(frozen=True)
class Rel:
    dom: int
    cod: int
    pairs: frozenset

    def __str__(self):
        body = ",".join(f"({x + 1},{y + 1})" for x, y in sorted(self.pairs))
        return f"{{{body}}}:{self.dom}->{self.cod}"

    def __call__(self, x, y) -> bool:
        return (x, y) in self.pairs


def rel(dom: int, cod: int, pairs) -> Rel:
    return Rel(dom, cod, frozenset(pairs))


class FinRel(DaggerKernelCategory):
    """Sets of size 0..maxsize with relations between them."""

    def __init__(self, maxsize: int = 2):
        super().__init__()
        if maxsize > 3:
            raise BudgetExceeded(f"FinRel is capped at size 3, asked for {maxsize}", 2 ** (maxsize * maxsize))
        self.maxsize = maxsize
        self.name = f"FinRel({maxsize})"

    def objects(self):
        return list(range(self.maxsize + 1))

    def hom(self, X, Y, budget=DEFAULT_BUDGET):
        need = 2 ** (X * Y)
        if need > budget:
            raise BudgetExceeded(f"Hom({X},{Y}) in Rel has {need} relations, budget is {budget}", need)
        return _rel_hom(X, Y)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def compose(self, g: Rel, f: Rel) -> Rel:
        if f.cod != g.dom:
            raise DomainMismatch(f"cannot compose {f} with {g}", (str(f), str(g)))
        return Rel(f.dom, g.cod, frozenset((x, z) for x, y in f.pairs for y2, z in g.pairs if y == y2))

    def dagger(self, f: Rel) -> Rel:
        return Rel(f.cod, f.dom, frozenset((y, x) for x, y in f.pairs))

    def identity(self, X):
        return Rel(X, X, frozenset((x, x) for x in range(X)))

    def zero_object(self):
        return 0

    def zero(self, X, Y):
        return Rel(X, Y, frozenset())

    def kernel(self, f: Rel):
        """Partial-identity inclusion of ``{x : no y with f(x, y)}``."""
        dead = [x for x in range(f.dom) if not any(p[0] == x for p in f.pairs)]
        return len(dead), Rel(len(dead), f.dom, frozenset(enumerate(dead)))

    def inclusion(self, X: int, subset: Sequence[int]) -> Rel:
        return Rel(len(subset), X, frozenset(enumerate(sorted(subset))))

    def ksubs(self, X, budget=DEFAULT_BUDGET):
        return [self.inclusion(X, [x for x in range(X) if mask >> x & 1]) for mask in range(2 ** X)]

    def sub_label(self, m: Rel) -> str:
        return "{" + ",".join(str(y + 1) for _, y in sorted(m.pairs)) + "}"

    def obj_label(self, X):
        return str(X)

    def biproduct(self, X: int, Y: int):
        """``(X+Y, κ1, κ2)`` with injection partial identities."""
        k1 = Rel(X, X + Y, frozenset((x, x) for x in range(X)))
        k2 = Rel(Y, X + Y, frozenset((y, X + y) for y in range(Y)))
        return X + Y, k1, k2

    def graph(self, g: Sequence[int], cod: int) -> Rel:
        return Rel(len(g), cod, frozenset(enumerate(g)))


@functools.lru_cache(maxsize=None)
def _rel_hom(X: int, Y: int) -> list:
    cells = [(x, y) for x in range(X) for y in range(Y)]
    out = []
    for mask in range(2 ** len(cells)):
        out.append(Rel(X, Y, frozenset(c for i, c in enumerate(cells) if mask >> i & 1)))
    return out


def finrel(maxsize: int = 2) -> FinRel:
    return FinRel(maxsize)


def sai_rel(R: Rel) -> Rel:
    """``′R = {(x, x) : no y with R(x, y)}``."""
    return Rel(R.dom, R.dom, frozenset((x, x) for x in range(R.dom)
                                       if not any(p[0] == x for p in R.pairs)))


# -- Galois connections -----------------------------------------------------

class OMLatGal(DaggerKernelCategory):
    """Corpus lattices with Galois connections; kernels are downset embeddings."""

    def __init__(self, lattices: Sequence[Oml]):
        super().__init__()
        self.lattices = list(lattices)
        for L in self.lattices:
            L.require_orthomodular()
        self.name = "OMLatGal(" + ",".join(L.name for L in self.lattices) + ")"
        self._zero = corpus("zero")

    def objects(self):
        return list(self.lattices)

    def hom(self, X, Y, budget=DEFAULT_BUDGET):
        return gal.enumerate_hom(X, Y, budget)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def compose(self, g, f):
        return gal.compose(g, f)

    def dagger(self, f):
        return gal.dagger(f)

    def identity(self, X):
        return gal.identity(X)

    def zero_object(self):
        return self._zero

    def zero(self, X, Y):
        return gal.zero_mor(X, Y)

    def kernel(self, f):
        emb = ker.kernel(f).embedding
        return emb.dom, emb

    def ksubs(self, X, budget=DEFAULT_BUDGET):
        return [gal.downset_embedding(X, a) for a in X]

    def sub_label(self, m: GalMor) -> str:
        return m.cod.labels[m.cod.ortho[m.lower[m.dom.top]]]

    def obj_label(self, X):
        return X.name

    def mor_label(self, f):
        return f"{f.dom.name}->{f.cod.name}{f.label()}"


def omlatgal_instance(lattices: Sequence[Oml]) -> OMLatGal:
    return OMLatGal(lattices)


# -- KSub functor -----------------------------------------------------------

def verify_ksub_preservation(D: DaggerKernelCategory, objs: Optional[Sequence] = None,
                             budget: int = DEFAULT_BUDGET) -> Report:
    """KSub is a functor that keeps the dagger kernel structure."""
    objs = list(D.objects() if objs is None else objs)
    rep = Report(f"KSub on {D.name}")
    lab = D.mor_label
    homs = {(X, Y): D.hom(X, Y, budget) for X in objs for Y in objs}
    ks = {f: ksub_functor(D, f, budget) for fs in homs.values() for f in fs}

    wit = next((lab(f) for f, F in ks.items() if ks[D.dagger(f)] != gal.dagger(F)), None)
    rep.add("KSub(f†) = KSub(f)†", wit is None, wit)
    wit = next((D.obj_label(X) for X in objs if ks[D.identity(X)] != gal.identity(ks[D.identity(X)].dom)), None)
    rep.add("KSub(id) = id", wit is None, wit)
    wit = next(((lab(f), lab(g)) for X in objs for Y in objs for Z in objs
                for f in homs[X, Y] for g in homs[Y, Z]
                if ks[D.compose(g, f)] != gal.compose(ks[g], ks[f])), None)
    rep.add("KSub(g ∘ f) = KSub(g) ∘ KSub(f)", wit is None, wit)
    z = ksub_lattice(D, D.zero_object(), budget).oml
    rep.add("KSub(0) is the one-element lattice", len(z) == 1, None if len(z) == 1 else (len(z),))
    wit = next((lab(f) for f, F in ks.items() if is_zero(D, f) and not gal.is_zero(F)), None)
    rep.add("KSub(0_{X,Y}) = 0", wit is None, wit)

    def kernel_failures():
        for f, F in ks.items():
            K, k = D.kernel(f)
            Fk = ksub_functor(D, k, budget)
            if not gal.is_dagger_mono(Fk)[0]:
                yield lab(f), "KSub(ker f) not a dagger mono"
            elif ker.image(Fk).elem != ker.kernel(F).elem:
                yield lab(f), "image of KSub(ker f) != ker KSub(f)"
            else:
                src = ksub_lattice(D, K, budget)
                tgt = ksub_lattice(D, D.cod(k), budget)
                for i, m in enumerate(src.monos):
                    if Fk.lower[i] != tgt.oml.ortho[tgt.locate(D.compose(k, m))]:
                        yield lab(f), "KSub(ker f) differs from m ↦ k∘m"
                        break

    wit = next(kernel_failures(), None)
    rep.add("KSub(ker f) = ker KSub(f) via m ↦ k∘m", wit is None, wit)
    return rep


def kernels_change_of_base(D: DaggerKernelCategory, k, budget: int = DEFAULT_BUDGET) -> Report:
    """``KSub(K) ≅ ↓k`` via ``m ↦ k∘m`` and ``n ↦ k†∘n``."""
    K, X = D.dom(k), D.cod(k)
    rep = Report(f"change of base along {D.mor_label(k)}")
    A, B = ksub_lattice(D, K, budget), ksub_lattice(D, X, budget)
    below = [j for j, n in enumerate(B.monos) if sub_le(D, n, k)]
    fwd = [B.locate(D.compose(k, m)) for m in A.monos]
    rep.add("m ↦ k∘m lands in ↓k", all(j in below for j in fwd))
    bwd = {j: A.locate(D.compose(D.dagger(k), B.monos[j])) for j in below}
    rt1 = all(bwd[fwd[i]] == i for i in range(len(A.monos)))
    rt2 = all(fwd[bwd[j]] == j for j in below)
    rep.add("k†∘(k∘m) = m", rt1)
    rep.add("k∘(k†∘n) = n for n <= k", rt2)
    wit = next(((A.oml.labels[i], A.oml.labels[j]) for i in range(len(A.monos))
                for j in range(len(A.monos))
                if A.oml.leq[i][j] != B.oml.leq[fwd[i]][fwd[j]]), None)
    rep.add("order preserved and reflected", wit is None, wit)
    return rep


def check_boolean_dkc(D: DaggerKernelCategory, X, budget: int = DEFAULT_BUDGET) -> Report:
    """``m ∧ n = 0 ⇒ m† ∘ n = 0`` over all kernel pairs on X."""
    S = ksub_lattice(D, X, budget)
    L = S.oml
    rep = Report(f"boolean {D.obj_label(X)} in {D.name}")
    wit = next(((L.labels[i], L.labels[j]) for i in L for j in L
                if L.meet_tab[i][j] == L.bottom
                and not is_zero(D, D.compose(D.dagger(S.monos[i]), S.monos[j]))), None)
    rep.add("m ∧ n = 0 implies m† ∘ n = 0", wit is None, wit)
    return rep


def biproduct_preservation(D: FinRel, X1: int, X2: int, targets: Sequence[Oml],
                           budget: int = DEFAULT_BUDGET) -> Report:
    """KSub(κ1), KSub(κ2) exhibit KSub(X1+X2) as a coproduct of Galois connections."""
    B, k1, k2 = D.biproduct(X1, X2)
    p1, p2 = D.dagger(k1), D.dagger(k2)
    rep = Report(f"KSub biproduct {X1}+{X2}")
    K1, K2 = ksub_functor(D, k1, budget), ksub_functor(D, k2, budget)
    P1, P2 = ksub_functor(D, p1, budget), ksub_functor(D, p2, budget)
    A1, A2 = K1.dom, K2.dom
    rep.add("KSub(π_i) ∘ KSub(κ_i) = id",
            gal.compose(P1, K1) == gal.identity(A1) and gal.compose(P2, K2) == gal.identity(A2))
    rep.add("KSub(π_j) ∘ KSub(κ_i) = 0 for i != j",
            gal.is_zero(gal.compose(P2, K1)) and gal.is_zero(gal.compose(P1, K2)))
    PB = K1.cod
    Sb = ksub_lattice(D, B, budget)

    def ex(P, m_idx):
        # ∃_π(m) = KSub(π)_*(m)^⊥
        return P.cod.ortho[P.lower[m_idx]]

    def failures():
        for Y in targets:
            homs_B = gal.enumerate_hom(PB, Y, budget)
            for f1 in gal.enumerate_hom(A1, Y, budget):
                for f2 in gal.enumerate_hom(A2, Y, budget):
                    lower = [Y.meet_tab[f1.lower[ex(P1, m)]][f2.lower[ex(P2, m)]]
                             for m in range(len(Sb.monos))]
                    try:
                        g = gal.from_lower(PB, Y, lower)
                    except NotGalois:
                        yield Y.name, f1.label(), f2.label(), "cotuple is not a Galois connection"
                        return
                    if gal.compose(g, K1) != f1 or gal.compose(g, K2) != f2:
                        yield Y.name, f1.label(), f2.label(), "cotuple legs differ"
                        return
                    n = sum(1 for h in homs_B if gal.compose(h, K1) == f1 and gal.compose(h, K2) == f2)
                    if n != 1:
                        yield Y.name, f1.label(), f2.label(), f"{n} mediating maps"
                        return

    wit = next(failures(), None)
    rep.add("cotuple [f1,f2]_*(m) = f1_*(∃π1 m) ∧ f2_*(∃π2 m) is the unique mediator",
            wit is None, wit)
    return rep


# -- powerset adjunction ----------------------------------------------------

def _subset_label(names, mask):
    return "{" + ",".join(n for i, n in enumerate(names) if mask >> i & 1) + "}"


@functools.lru_cache(maxsize=None)
def _free_powerset(names: tuple) -> Oml:
    n = len(names)
    full = (1 << n) - 1
    masks = range(1 << n)
    labels = [_subset_label(names, m) for m in masks]
    order = [(labels[a], labels[b]) for a in masks for b in masks if a | b == b and a != b]
    ortho = {labels[m]: labels[full ^ m] for m in masks}
    return from_tables("P{" + ",".join(names) + "}", labels, order, ortho)


def free_powerset(A) -> Oml:
    """``P(A)`` as a Boolean algebra; A is a size or a sequence of names.

    Element ``i`` of the lattice is the subset with bitmask ``i``.
    """
    names = tuple(f"a{i + 1}" for i in range(A)) if isinstance(A, int) else tuple(A)
    return _free_powerset(names)


def transpose_to_function(f: GalMor) -> tuple[int, ...]:
    """``f̄(a) = f_*({a})^⊥``."""
    X = f.cod
    n = len(f.dom).bit_length() - 1
    return tuple(X.ortho[f.lower[1 << i]] for i in range(n))


def transpose_to_mor(P: Oml, X: Oml, g: Sequence[int]) -> GalMor:
    """``ḡ_*(U) = ⋀_{a∈U} g(a)^⊥``, ``ḡ^*(x) = {a : g(a) <= x^⊥}``."""
    n = len(g)
    lower = [X.meet_all(X.ortho[g[i]] for i in range(n) if U >> i & 1) for U in range(1 << n)]
    upper = [sum(1 << i for i in range(n) if X.leq[g[i]][X.ortho[x]]) for x in X]
    return gal.galmor(P, X, lower, upper)


def free_map(g: Sequence[int], nA: int, nB: int) -> GalMor:
    """``F(g): P(A) -> P(B)``: lower ``U ↦ ¬g[U]``, upper ``V ↦ {a : g(a) ∉ V}``."""
    PA, PB = free_powerset(nA), free_powerset(nB)
    fullB = (1 << nB) - 1

    def img(U):
        out = 0
        for i in range(nA):
            if U >> i & 1:
                out |= 1 << g[i]
        return out

    lower = [fullB ^ img(U) for U in range(1 << nA)]
    upper = [sum(1 << a for a in range(nA) if not V >> g[a] & 1) for V in range(1 << nB)]
    return gal.galmor(PA, PB, lower, upper)


def adjunction_check(A: int, X: Oml, budget: int = DEFAULT_BUDGET) -> Report:
    P = free_powerset(A)
    rep = Report(f"powerset adjunction |A|={A}, {X.name}")
    homs = gal.enumerate_hom(P, X, budget)
    fns = list(itertools.product(range(len(X)), repeat=A))
    rep.add("|Hom(P(A),X)| = |X|^|A|", len(homs) == len(X) ** A, None if len(homs) == len(X) ** A
            else (len(homs), len(X) ** A))
    wit = next((f.label() for f in homs
                if transpose_to_mor(P, X, transpose_to_function(f)) != f), None)
    rep.add("f ↦ f̄ ↦ f round-trips", wit is None, wit)
    wit = next((g for g in fns if transpose_to_function(transpose_to_mor(P, X, g)) != g), None)
    rep.add("g ↦ ḡ ↦ g round-trips", wit is None, None if wit is None else tuple(X.labels[v] for v in wit))
    return rep


def free_functor_check(nA: int, nB: int, X: Oml, budget: int = DEFAULT_BUDGET) -> Report:
    """F is a functor into Galois connections with natural transposition."""
    rep = Report(f"free functor {nA}->{nB}, {X.name}")
    PB = free_powerset(nB)
    PA = free_powerset(nA)
    gs = list(itertools.product(range(nB), repeat=nA))
    try:
        Fs = {g: free_map(g, nA, nB) for g in gs}
    except NotGalois as e:
        rep.add("F(g) is a Galois connection", False, e.witness)
        return rep
    rep.add("F(g) is a Galois connection", True)
    ident = tuple(range(nA))
    rep.add("F(id) = id", free_map(ident, nA, nA) == gal.identity(PA))
    wit = next((g for g in gs for h in itertools.product(range(nA), repeat=nB)
                if gal.compose(free_map(h, nB, nA), Fs[g])
                != free_map(tuple(h[g[a]] for a in range(nA)), nA, nA)), None)
    rep.add("F(h ∘ g) = F(h) ∘ F(g)", wit is None, wit)
    wit = next(((g, h) for g in gs for h in itertools.product(range(len(X)), repeat=nB)
                if gal.compose(transpose_to_mor(PB, X, h), Fs[g])
                != transpose_to_mor(PA, X, tuple(h[g[a]] for a in range(nA)))), None)
    rep.add("h̄ ∘ F(g) = (h ∘ g)‾", wit is None, wit)
    return rep


def graph_factorization_check(A: int, budget: int = DEFAULT_BUDGET) -> Report:
    """``F(A) ≅ KSub(A)`` in FinRel, with ``F(g)`` matching ``KSub(graph g)``."""
    D = FinRel(max(A, 1))
    P = free_powerset(A)
    S = ksub_lattice(D, A, budget)
    rep = Report(f"graph factorisation |A|={A}")
    # FinRel lists subsets in bitmask order, matching the powerset
    same = S.oml.leq == P.leq and S.oml.ortho == P.ortho
    rep.add("F(A) = KSub(A) under U ↦ inclusion of U", same)
    rep.add("an ortho-isomorphism exists", find_iso(P, S.oml) is not None)
    wit = next((g for g in itertools.product(range(A), repeat=A)
                if ksub_functor(D, D.graph(g, A), budget).lower != free_map(g, A, A).lower), None)
    rep.add("KSub(G(g)) = F(g) for all g: A -> A", wit is None, wit)
    return rep
