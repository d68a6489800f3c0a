"""Kernel calculus for Galois connections between orthomodular lattices.

A kernel subobject of X is represented by the element ``a`` generating it;
its mono is the downset embedding ``↓a -> X``.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainMismatch
from .galois import (
    DEFAULT_BUDGET,
    GalMor,
    compose,
    dagger,
    downset_embedding,
    enumerate_hom,
    galmor,
    identity,
    is_dagger_mono,
    is_zero,
    point,
    unpoint,
    zero_mor,
)
from .oml import ElemLike, Oml, and_then, downset, sasaki_hook
from .report import Report


@dataclass(frozen=True)
class KernelSub:
    ambient: Oml
    elem: int

    @property
    def embedding(self) -> GalMor:
        return downset_embedding(self.ambient, self.elem)

    @property
    def label(self) -> str:
        return self.ambient.labels[self.elem]

    def __repr__(self):
        return f"KernelSub(↓{self.label} in {self.ambient.name})"


def ksub(X: Oml, a: ElemLike) -> KernelSub:
    return KernelSub(X, X.elem(a))


def kernel(f: GalMor) -> KernelSub:
    """``ker f = ↓f^*(1)``."""
    return KernelSub(f.dom, f.upper[f.cod.top])


def cokernel(f: GalMor) -> GalMor:
    """``Y -> ↓f_*(1)`` with lower ``y^⊥ ∧ f_*(1)`` and upper ``v^⊥``."""
    Y = f.cod
    a = f.lower[f.dom.top]
    D = downset(Y, a)
    members = D.origin[1]
    pos = {u: i for i, u in enumerate(members)}
    lower = [pos[Y.meet_tab[Y.ortho[y]][a]] for y in Y]
    upper = [Y.ortho[u] for u in members]
    return GalMor(Y, D, lower, upper)


def is_zero_epi(f: GalMor) -> bool:
    return f.lower[f.dom.top] == f.cod.bottom


def is_zero_mono(f: GalMor) -> bool:
    return f.upper[f.cod.top] == f.dom.bottom


@dataclass(frozen=True)
class Factorization:
    e: GalMor        # X -> Im f, zero-epi
    m: GalMor        # Im f† -> Im f, zero-epi and zero-mono
    i: GalMor        # Im f -> Y, kernel embedding
    j_dag: GalMor    # X -> Im f†, dagger of the embedding of Im f†


def factorize(f: GalMor) -> Factorization:
    X, Y = f.dom, f.cod
    top_img = f.lower[X.top]
    top_coimg = f.upper[Y.top]
    a = Y.ortho[top_img]            # Im f = ↓f_*(1)^⊥
    b = X.ortho[top_coimg]          # Im f† = ↓f^*(1)^⊥
    i = downset_embedding(Y, a)
    j = downset_embedding(X, b)
    IY, IX = i.dom, j.dom
    ypos = {u: k for k, u in enumerate(IY.origin[1])}
    xpos = {u: k for k, u in enumerate(IX.origin[1])}
    e = galmor(X, IY, [ypos[Y.meet_tab[f.lower[x]][a]] for x in X],
               [f.upper[v] for v in IY.origin[1]])
    m = galmor(IX, IY, [ypos[Y.meet_tab[f.lower[x]][a]] for x in IX.origin[1]],
               [xpos[X.meet_tab[f.upper[v]][b]] for v in IY.origin[1]])
    return Factorization(e, m, i, dagger(j))


def _check_same_ambient(sub: KernelSub, X: Oml, role: str):
    if sub.ambient != X:
        raise DomainMismatch(f"{role} subobject lives in {sub.ambient.name}, expected {X.name}",
                             (sub.ambient.name, X.name))


def inverse_image(f: GalMor, n: KernelSub) -> KernelSub:
    """``f⁻¹(↓b) = ↓f^*(b^⊥)``."""
    _check_same_ambient(n, f.cod, "pulled-back")
    return KernelSub(f.dom, f.upper[f.cod.ortho[n.elem]])


def inverse_image_generic(f: GalMor, n: KernelSub) -> KernelSub:
    """``ker(coker(n) ∘ f)``, computed through the categorical operations."""
    _check_same_ambient(n, f.cod, "pulled-back")
    return kernel(compose(cokernel(n.embedding), f))


def direct_image(f: GalMor, m: KernelSub) -> KernelSub:
    """``∃_f(↓a) = ↓(f_*(a)^⊥)``."""
    _check_same_ambient(m, f.dom, "pushed-forward")
    return KernelSub(f.cod, f.cod.ortho[f.lower[m.elem]])


def image(g: GalMor) -> KernelSub:
    """The least kernel through which g factors: ``ker(coker g)``."""
    return kernel(cokernel(g))


def direct_image_generic(f: GalMor, m: KernelSub) -> KernelSub:
    _check_same_ambient(m, f.dom, "pushed-forward")
    return image(compose(f, m.embedding))


def effect(L: Oml, a: ElemLike) -> GalMor:
    """``↓a ∘ (↓a)†``, the projection onto ``a``."""
    emb = downset_embedding(L, a)
    return compose(emb, dagger(emb))


def wp(f: GalMor, y: ElemLike) -> int:
    """Weakest precondition ``[f](y) = f^*(y^⊥)``."""
    y = f.cod.elem(y)
    return f.upper[f.cod.ortho[y]]


def ksubs(X: Oml) -> list[KernelSub]:
    return [KernelSub(X, a) for a in X]


def factors_through(g: GalMor, m: GalMor, budget: int = DEFAULT_BUDGET) -> list[GalMor]:
    """All h with ``m ∘ h = g``."""
    return [h for h in enumerate_hom(g.dom, m.dom, budget) if compose(m, h) == g]


# -- verification -----------------------------------------------------------

def ksub_lattice(X: Oml, targets: Sequence[Oml] = (), budget: int = DEFAULT_BUDGET) -> Report:
    """Check that ``a ↦ ↓a`` is an isomorphism of X onto its kernel subobjects.

    ``targets`` lists codomains for the naturality squares of images.
    """
    X.require_orthomodular()
    rep = Report(f"KSub({X.name}) = {X.name}")
    labs = X.labels
    emb = {a: downset_embedding(X, a) for a in X}

    bad = next((a for a in X if kernel(cokernel(emb[a])).elem != a
                or not is_dagger_mono(emb[a])[0]), None)
    rep.add("each ↓a is the kernel of its cokernel", bad is None,
            None if bad is None else (labs[bad],))

    wit = None
    for a in X:
        for b in X:
            fac = len(factors_through(emb[a], emb[b], budget))
            if fac > 1 or (fac == 1) != X.leq[a][b]:
                wit = (labs[a], labs[b], fac)
                break
        if wit:
            break
    rep.add("a <= b iff ↓a factors uniquely through ↓b", wit is None, wit)

    bad = next((a for a in X if kernel(dagger(emb[a])).elem != X.ortho[a]), None)
    rep.add("(↓a)^⊥ = ker((↓a)†) = ↓a^⊥", bad is None, None if bad is None else (labs[bad],))

    wit = None
    for a in X:
        for b in X:
            pulled = inverse_image_generic(emb[a], KernelSub(X, b))
            met = direct_image_generic(emb[a], pulled).elem
            if met != X.meet_tab[a][b]:
                wit = (labs[a], labs[b])
                break
        if wit:
            break
    rep.add("↓a ∧ ↓b computed by pullback = ↓(a ∧ b)", wit is None, wit)

    e1 = emb[X.top]
    top_ok = (compose(e1, dagger(e1)) == identity(X)
              and compose(dagger(e1), e1) == identity(e1.dom))
    rep.add("↓1 -> X is an isomorphism", top_ok, None if top_ok else (labs[X.top],))

    for Y in targets:
        wit_e = wit_i = None
        for f in enumerate_hom(X, Y, budget):
            for a in X:
                if wit_e is None and (direct_image_generic(f, KernelSub(X, a)).elem
                                      != Y.ortho[f.lower[a]]):
                    wit_e = (f.label(), labs[a])
            for b in Y:
                if wit_i is None and (inverse_image_generic(f, KernelSub(Y, b)).elem
                                      != f.upper[Y.ortho[b]]):
                    wit_i = (f.label(), Y.labels[b])
        rep.add(f"∃_f matches ⊥∘f_* for f: {X.name}->{Y.name}", wit_e is None, wit_e)
        rep.add(f"f⁻¹ matches f^*∘⊥ for f: {X.name}->{Y.name}", wit_i is None, wit_i)
    return rep


def char(sub: KernelSub) -> GalMor:
    """The point ``2 -> X`` classifying a kernel subobject."""
    return point(sub.ambient, sub.elem)


def char_iso(X: Oml, targets: Sequence[Oml] = (), budget: int = DEFAULT_BUDGET) -> Report:
    from .oml import two

    X.require_orthomodular()
    rep = Report(f"KSub({X.name}) = Hom(2,{X.name})")
    pts = enumerate_hom(two(), X, budget)
    rep.add("|Hom(2,X)| = |X|", len(pts) == len(X), None if len(pts) == len(X)
            else (len(pts), len(X)))
    chars = [char(s) for s in ksubs(X)]
    bij = len(set(chars)) == len(X) and set(chars) == set(pts)
    rep.add("char is a bijection onto Hom(2,X)", bij, None if bij else (X.name,))
    bad = next((a for a in X if unpoint(point(X, a)) != a), None)
    rep.add("unpoint ∘ point = id", bad is None, None if bad is None else (X.labels[bad],))
    bad = next((p for p in pts if point(X, unpoint(p)) != p), None)
    rep.add("point ∘ unpoint = id", bad is None, None if bad is None else (bad.label(),))
    bad = next((p for p in pts if image(p).elem != unpoint(p)), None)
    rep.add("image of char(↓a) is ↓a", bad is None, None if bad is None else (bad.label(),))
    for Y in targets:
        wit = None
        for f in enumerate_hom(X, Y, budget):
            for s in ksubs(X):
                if char(direct_image(f, s)) != compose(f, char(s)):
                    wit = (f.label(), s.label)
                    break
            if wit:
                break
        rep.add(f"char ∘ ∃_f = (f ∘ -) ∘ char for f: {X.name}->{Y.name}", wit is None, wit)
    return rep


@functools.lru_cache(maxsize=None)
def _factor_counts(Z: Oml, m: GalMor) -> Counter:
    return Counter(compose(m, h) for h in enumerate_hom(Z, m.dom))


def verify_kernel_universal(f: GalMor, zpool: Iterable[Oml],
                            budget: int = DEFAULT_BUDGET) -> Report:
    rep = Report(f"kernel of {f.dom.name}->{f.cod.name} {f.label()}")
    k = kernel(f).embedding
    rep.add("f ∘ ker f = 0", is_zero(compose(f, k)))
    ok, w = is_dagger_mono(k)
    rep.add("ker f is a dagger mono", ok, None if ok else (w,))
    for Z in zpool:
        enumerate_hom(Z, k.dom, budget)
        counts = _factor_counts(Z, k)
        wit = None
        for g in enumerate_hom(Z, f.dom, budget):
            n = counts.get(g, 0)
            want = 1 if is_zero(compose(f, g)) else 0
            if n != want:
                wit = (g.label(), n)
                break
        rep.add(f"unique mediation from {Z.name}", wit is None, wit)
    return rep


def sasaki_report(L: Oml) -> Report:
    """Categorical Sasaki connectives against the lattice formulas."""
    L.require_orthomodular()
    rep = Report(f"sasaki {L.name}")
    labs = L.labels
    eff = {m: effect(L, m) for m in L}
    w1 = next(((m, n) for m in L for n in L
               if inverse_image(eff[m], KernelSub(L, n)).elem != sasaki_hook(L, m, n)
               or inverse_image_generic(eff[m], KernelSub(L, n)).elem != sasaki_hook(L, m, n)),
              None)
    rep.add("effect(m)⁻¹(↓n) = ↓(m ⊃ n)", w1 is None, None if w1 is None else tuple(labs[v] for v in w1))
    w2 = next(((m, k) for m in L for k in L
               if direct_image(eff[m], KernelSub(L, k)).elem != and_then(L, k, m)
               or direct_image_generic(eff[m], KernelSub(L, k)).elem != and_then(L, k, m)),
              None)
    rep.add("∃_effect(m)(↓k) = ↓(k & m)", w2 is None, None if w2 is None else tuple(labs[v] for v in w2))
    w3 = next(((k, m, n) for k in L for m in L for n in L
               if L.leq[and_then(L, k, m)][n] != L.leq[k][sasaki_hook(L, m, n)]), None)
    rep.add("k & m <= n iff k <= m ⊃ n", w3 is None, None if w3 is None else tuple(labs[v] for v in w3))
    w4 = next((m for m in L if any(wp(eff[m], n) != sasaki_hook(L, m, n) for n in L)), None)
    rep.add("[effect(m)](n) = m ⊃ n", w4 is None, None if w4 is None else (labs[w4],))
    return rep
