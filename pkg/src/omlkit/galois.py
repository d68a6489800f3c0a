"""Antitone Galois connections between finite orthomodular lattices.

A morphism ``f: X -> Y`` is a pair of antitone maps ``lower: X -> Y`` and
``upper: Y -> X`` with ``x <= upper(y)  iff  y <= lower(x)``.  The lower table
determines the morphism, so it alone drives equality and hashing.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DomainMismatch, NotGalois
from .oml import ElemLike, Oml, assemble, downset, two
from .report import Report

DEFAULT_BUDGET = 10 ** 7


class GalMor:
    __slots__ = ("dom", "cod", "lower", "upper", "_hash")

    def __init__(self, dom: Oml, cod: Oml, lower: Sequence[int], upper: Sequence[int]):
        self.dom = dom
        self.cod = cod
        self.lower = tuple(lower)
        self.upper = tuple(upper)
        self._hash = hash((dom, cod, self.lower))

    def __eq__(self, other):
        if not isinstance(other, GalMor):
            return NotImplemented
        return (self.lower == other.lower and self.dom == other.dom
                and self.cod == other.cod)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GalMor({self.dom.name} -> {self.cod.name}, {self.label()})"

    def label(self) -> str:
        """Serialized lower table, e.g. ``[1,a',b',0]``."""
        return "[" + ",".join(self.cod.labels[v] for v in self.lower) + "]"

    def lower_of(self, x: ElemLike) -> int:
        return self.lower[self.dom.elem(x)]

    def upper_of(self, y: ElemLike) -> int:
        return self.upper[self.cod.elem(y)]


def _adjunction_witness(X: Oml, Y: Oml, lower, upper) -> Optional[tuple[int, int]]:
    for x in X:
        lx = lower[x]
        row = X.leq[x]
        for y in Y:
            if row[upper[y]] != Y.leq[y][lx]:
                return x, y
    return None


def check_galois(f: GalMor) -> Report:
    X, Y = f.dom, f.cod
    rep = Report(f"galois {X.name}->{Y.name} {f.label()}")
    total = len(f.lower) == len(X) and len(f.upper) == len(Y)
    rep.add("tables total", total)
    if not total:
        return rep
    w = _adjunction_witness(X, Y, f.lower, f.upper)
    rep.add("x <= f^*(y) iff y <= f_*(x)", w is None,
            None if w is None else (X.labels[w[0]], Y.labels[w[1]]))
    return rep


def galmor(X: Oml, Y: Oml, lower, upper) -> GalMor:
    """Validated constructor; raises NotGalois with an (x, y) witness."""
    lower = [Y.elem(v) for v in lower]
    upper = [X.elem(v) for v in upper]
    w = _adjunction_witness(X, Y, lower, upper)
    if w is not None:
        raise NotGalois(f"adjunction fails at x={X.labels[w[0]]}, y={Y.labels[w[1]]}",
                        (X.labels[w[0]], Y.labels[w[1]]))
    return GalMor(X, Y, lower, upper)


def upper_from_lower(X: Oml, Y: Oml, lower: Sequence[int]) -> list[int]:
    return [X.join_all(x for x in X if Y.leq[y][lower[x]]) for y in Y]


def from_lower(X: Oml, Y: Oml, lower) -> GalMor:
    """The morphism with the given lower table; upper is the induced adjoint.

    ``lower`` may be a sequence indexed by X or a mapping from X-labels.
    """
    if isinstance(lower, dict):
        missing = [x for x in X.labels if x not in lower]
        if missing:
            raise NotGalois(f"lower table has no entry for {missing[0]!r}", (missing[0],))
        lower = [lower[x] for x in X.labels]
    if len(lower) != len(X):
        raise NotGalois("lower table is not total on the domain", ())
    low = [Y.elem(v) for v in lower]
    return galmor(X, Y, low, upper_from_lower(X, Y, low))


def identity(X: Oml) -> GalMor:
    X.require_orthomodular()
    return GalMor(X, X, X.ortho, X.ortho)


def zero_mor(X: Oml, Y: Oml) -> GalMor:
    return GalMor(X, Y, [Y.top] * len(X), [X.top] * len(Y))


def compose(g: GalMor, f: GalMor) -> GalMor:
    """``g ∘ f``: lower ``g_*(f_*(x)^⊥)``, upper ``f^*(g^*(z)^⊥)``."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose {f.cod.name} -> with {g.dom.name} ->",
                             (f.cod.name, g.dom.name))
    oy = f.cod.ortho
    lower = [g.lower[oy[v]] for v in f.lower]
    upper = [f.upper[oy[v]] for v in g.upper]
    return GalMor(f.dom, g.cod, lower, upper)


def compose_all(*fs: GalMor) -> GalMor:
    """``compose_all(h, g, f) = h ∘ g ∘ f``."""
    acc = fs[-1]
    for g in reversed(fs[:-1]):
        acc = compose(g, acc)
    return acc


def dagger(f: GalMor) -> GalMor:
    return GalMor(f.cod, f.dom, f.upper, f.lower)


def is_dagger_mono(f: GalMor) -> tuple[bool, Optional[str]]:
    ox, oy = f.dom.ortho, f.cod.ortho
    for x in f.dom:
        if f.upper[oy[f.lower[x]]] != ox[x]:
            return False, f.dom.labels[x]
    return True, None


def equal(f: GalMor, g: GalMor) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("morphisms are not parallel",
                             (f.dom.name, f.cod.name, g.dom.name, g.cod.name))
    same = f.lower == g.lower
    assert not same or f.upper == g.upper, "equal lower tables with different upper tables"
    return same


def is_zero(f: GalMor) -> bool:
    top = f.cod.top
    return all(v == top for v in f.lower)


# -- enumeration ------------------------------------------------------------

def hom_candidates(X: Oml, Y: Oml) -> int:
    return len(Y) ** len(X.join_irreducibles)


def enumerate_hom(X: Oml, Y: Oml, budget: int = DEFAULT_BUDGET) -> list[GalMor]:
    """Every Galois connection X -> Y, sorted by lower table."""
    need = hom_candidates(X, Y)
    if need > budget:
        raise BudgetExceeded(
            f"Hom({X.name},{Y.name}) needs {need} candidates, budget is {budget}", need)
    return list(_enumerate(X, Y))


@functools.lru_cache(maxsize=None)
def _enumerate(X: Oml, Y: Oml) -> tuple[GalMor, ...]:
    jis = X.join_irreducibles
    k = len(jis)
    pos = {j: i for i, j in enumerate(jis)}
    below = [frozenset(pos[j] for j in jis if X.leq[j][x]) for x in X]
    # step at which each element's value becomes fully determined
    ready = [max(b) if b else -1 for b in below]
    newly = [[x for x in X if ready[x] == i] for i in range(k)]
    # x ∨ j = z checks, attached to the step where z becomes determined
    triples = [[] for _ in range(k)]
    for x in X:
        for j in jis:
            z = X.join_tab[x][j]
            if ready[z] >= 0:
                triples[ready[z]].append((x, pos[j], z))
    greater = [[pos[j2] for j2 in jis[:i] if X.leq[jis[i]][j2]] for i in range(k)]
    smaller = [[pos[j2] for j2 in jis[:i] if X.leq[j2][jis[i]]] for i in range(k)]
    ymeet, yleq = Y.meet_tab, Y.leq
    val = [0] * k
    low = [Y.top if ready[x] < 0 else -1 for x in X]
    found = []

    def go(i):
        if i == k:
            found.append(tuple(low))
            return
        for v in Y:
            # antitone on join-irreducibles
            if any(not yleq[val[p]][v] for p in greater[i]):
                continue
            if any(not yleq[v][val[p]] for p in smaller[i]):
                continue
            val[i] = v
            for z in newly[i]:
                acc = Y.top
                for p in below[z]:
                    acc = ymeet[acc][val[p]]
                low[z] = acc
            ok = all(yleq[ymeet[low[x]][val[p]]][low[z]] for x, p, z in triples[i])
            if ok:
                go(i + 1)
        for z in newly[i]:
            low[z] = -1

    go(0)
    found.sort()
    out = []
    for lower in found:
        out.append(from_lower(X, Y, lower))
    return tuple(out)


class HomSet:
    """An enumerated homset with a lookup from lower tables to positions."""

    def __init__(self, X: Oml, Y: Oml, mors: Sequence[GalMor]):
        self.dom, self.cod = X, Y
        self.mors = list(mors)
        dtype = np.int16
        self.lowers = np.array([f.lower for f in self.mors], dtype=dtype).reshape(len(self.mors), len(X))
        self.index = {row.tobytes(): i for i, row in enumerate(self.lowers)}

    def __len__(self):
        return len(self.mors)

    def locate(self, rows: np.ndarray) -> np.ndarray:
        """Positions of the given lower-table rows (last axis); -1 if absent."""
        flat = np.ascontiguousarray(rows.reshape(-1, rows.shape[-1]).astype(np.int16))
        get = self.index.get
        out = np.fromiter((get(r.tobytes(), -1) for r in flat), dtype=np.int64, count=len(flat))
        return out.reshape(rows.shape[:-1])


@functools.lru_cache(maxsize=None)
def homset(X: Oml, Y: Oml) -> HomSet:
    return HomSet(X, Y, _enumerate(X, Y))


def compose_rows(G: np.ndarray, F: np.ndarray, ortho_mid: Sequence[int]) -> np.ndarray:
    """All lower tables ``g ∘ f``, shape ``(len(G), len(F), |X|)``."""
    om = np.asarray(ortho_mid, dtype=np.int64)
    return G[:, om[F]]


@functools.lru_cache(maxsize=None)
def comp_table(X: Oml, Y: Oml, Z: Oml) -> np.ndarray:
    """``T[g, f]`` = position of ``g ∘ f`` in Hom(X,Z), for g in Hom(Y,Z), f in Hom(X,Y)."""
    F, G = homset(X, Y), homset(Y, Z)
    if len(F) == 0 or len(G) == 0:
        return np.zeros((len(G), len(F)), dtype=np.int64)
    rows = compose_rows(G.lowers, F.lowers, Y.ortho)
    return homset(X, Z).locate(rows)


# -- special morphisms ------------------------------------------------------

def downset_embedding(L: Oml, a: ElemLike) -> GalMor:
    """The dagger mono ``↓a -> L``: lower ``u^⊥``, upper ``a ∧ x^⊥``."""
    a = L.elem(a)
    D = downset(L, a)
    members = D.origin[1]
    pos = {u: i for i, u in enumerate(members)}
    lower = [L.ortho[u] for u in members]
    upper = [pos[L.meet_tab[a][L.ortho[x]]] for x in L]
    return GalMor(D, L, lower, upper)


def point(X: Oml, a: ElemLike) -> GalMor:
    """The map ``2 -> X`` with lower ``0 ↦ 1, 1 ↦ a^⊥``."""
    a = X.elem(a)
    T = two()
    lower = [X.top, X.ortho[a]]
    upper = [T.top if X.leq[x][X.ortho[a]] else T.bottom for x in X]
    return GalMor(T, X, lower, upper)


def unpoint(p: GalMor) -> int:
    if p.dom != two():
        raise DomainMismatch(f"a point must have domain 2, not {p.dom.name}", (p.dom.name,))
    return p.cod.ortho[p.lower[p.dom.top]]


@dataclass(frozen=True)
class Biproduct:
    object: Oml
    left: Oml
    right: Oml
    k1: GalMor
    k2: GalMor
    p1: GalMor
    p2: GalMor

    def pair(self, x: int, y: int) -> int:
        return x * len(self.right) + y


@functools.lru_cache(maxsize=None)
def biproduct(X1: Oml, X2: Oml) -> Biproduct:
    X1.require_orthomodular()
    X2.require_orthomodular()
    n2 = len(X2)
    cells = [(x, y) for x in X1 for y in X2]
    labels = [f"({X1.labels[x]}|{X2.labels[y]})" for x, y in cells]
    leq = [[X1.leq[x][u] and X2.leq[y][v] for u, v in cells] for x, y in cells]
    ortho = [X1.ortho[x] * n2 + X2.ortho[y] for x, y in cells]
    P = assemble(f"{X1.name}+{X2.name}", labels, leq, ortho)
    k1 = GalMor(X1, P, [X1.ortho[x] * n2 + X2.top for x in X1],
                [X1.ortho[x] for x, _ in cells])
    k2 = GalMor(X2, P, [X1.top * n2 + X2.ortho[y] for y in X2],
                [X2.ortho[y] for _, y in cells])
    return Biproduct(P, X1, X2, k1, k2, dagger(k1), dagger(k2))


def cotuple(f1: GalMor, f2: GalMor, bp: Optional[Biproduct] = None) -> GalMor:
    """``[f1, f2]: X1 ⊕ X2 -> Y``."""
    if f1.cod != f2.cod:
        raise DomainMismatch("cotuple legs have different codomains", (f1.cod.name, f2.cod.name))
    if bp is None:
        bp = biproduct(f1.dom, f2.dom)
    if bp.left != f1.dom or bp.right != f2.dom:
        raise DomainMismatch("cotuple legs do not match the biproduct", (bp.object.name,))
    Y = f1.cod
    lower = [Y.meet_tab[f1.lower[x]][f2.lower[y]] for x in bp.left for y in bp.right]
    upper = [bp.pair(f1.upper[y], f2.upper[y]) for y in Y]
    return GalMor(bp.object, Y, lower, upper)
