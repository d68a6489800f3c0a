"""Finite Foulis semigroups.

An Fsg is an involutive monoid with an operation ``sai`` (written ``′s``)
sending each element to a self-adjoint idempotent that generates the right
annihilator of that element.  All tables are numpy arrays over dense
indices; ``labels`` gives the printable name of each index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    InvNotInvolutive,
    NoUnit,
    NotAssociative,
    SaiUnderivable,
    UnknownElement,
)
from .galois import DEFAULT_BUDGET, GalMor, compose, dagger, enumerate_hom, homset, comp_table, identity
from .oml import Oml
from .report import Report


@dataclass(eq=False)
class Fsg:
    name: str
    labels: tuple
    mul: np.ndarray
    unit: int
    inv: np.ndarray
    sai: np.ndarray
    # the underlying morphisms, when the semigroup is an endo-homset
    carrier: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    @property
    def zero(self) -> int:
        return int(self.sai[self.unit])

    def elem(self, s) -> int:
        if isinstance(s, str):
            if s not in self.index:
                raise UnknownElement(f"{s!r} is not an element of {self.name}", (s,))
            return self.index[s]
        if isinstance(s, (int, np.integer)) and 0 <= s < len(self.labels):
            return int(s)
        raise UnknownElement(f"{s!r} is not an element of {self.name}", (s,))

    def m(self, *xs) -> int:
        """Product of the arguments, left to right."""
        acc = self.unit
        for x in xs:
            acc = int(self.mul[acc, self.elem(x)])
        return acc

    def same_tables(self, other: "Fsg") -> bool:
        return (self.labels == other.labels and self.unit == other.unit
                and np.array_equal(self.mul, other.mul) and np.array_equal(self.inv, other.inv)
                and np.array_equal(self.sai, other.sai))

    def self_adjoint_idempotents(self) -> list[int]:
        d = np.arange(len(self))
        mask = (self.inv == d) & (self.mul[d, d] == d)
        return [int(i) for i in np.flatnonzero(mask)]


# -- construction -----------------------------------------------------------

def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return None if len(idx) == 0 else tuple(int(v) for v in idx[0])


def _assoc_witness(mul: np.ndarray):
    n = len(mul)
    # chunk over the first factor so memory stays bounded
    step = max(1, 2_000_000 // max(1, n * n))
    for lo in range(0, n, step):
        left = mul[mul[lo:lo + step], :]            # (a·b)·c
        right = mul[lo:lo + step][:, mul]           # a·(b·c)
        w = _first(left != right)
        if w is not None:
            return (w[0] + lo, w[1], w[2])
    return None


def _unit_witness(mul: np.ndarray, unit: int):
    d = np.arange(len(mul))
    bad = np.flatnonzero((mul[unit] != d) | (mul[:, unit] != d))
    return None if len(bad) == 0 else int(bad[0])


def _inv_witness(mul, inv, unit):
    n = len(mul)
    d = np.arange(n)
    if inv[unit] != unit:
        return "1† = 1", (unit,)
    bad = np.flatnonzero(inv[inv] != d)
    if len(bad):
        return "s†† = s", (int(bad[0]),)
    w = _first(inv[mul] != mul[np.ix_(inv, inv)].T)
    if w is not None:
        return "(s·t)† = t†·s†", w
    return None


def derive_sai(mul: np.ndarray, inv: np.ndarray, unit: int, labels=None) -> np.ndarray:
    """For each s the unique self-adjoint idempotent e with {x : s·x = 0} = e·S."""
    n = len(mul)
    d = np.arange(n)
    sais = np.flatnonzero((inv == d) & (mul[d, d] == d))
    # ′1 is the zero; it must be a self-adjoint idempotent generating {x : x = 0}
    zero_cands = [int(e) for e in sais if set(mul[e].tolist()) == {int(e)}]
    if len(zero_cands) != 1:
        raise SaiUnderivable("no unique zero element to anchor the annihilators", ())
    zero = zero_cands[0]
    right_ideal = [frozenset(mul[e].tolist()) for e in range(n)]
    out = np.zeros(n, dtype=np.int64)
    for s in range(n):
        ann = frozenset(np.flatnonzero(mul[s] == zero).tolist())
        cands = [int(e) for e in sais if right_ideal[e] == ann]
        if len(cands) != 1:
            lab = labels[s] if labels else s
            raise SaiUnderivable(
                f"{len(cands)} self-adjoint idempotents generate the annihilator of {lab}", (lab,))
        out[s] = cands[0]
    return out


def make_fsg(name: str, labels: Sequence[str], mul, unit: int, inv, sai=None,
             strict: bool = True, carrier=None) -> Fsg:
    mul = np.asarray(mul, dtype=np.int64)
    inv = np.asarray(inv, dtype=np.int64)
    labels = tuple(labels)
    if strict:
        w = _assoc_witness(mul)
        if w is not None:
            raise NotAssociative("multiplication is not associative",
                                 tuple(labels[i] for i in w))
        w = _unit_witness(mul, unit)
        if w is not None:
            raise NoUnit(f"{labels[unit]} is not a two-sided unit", (labels[w],))
        w = _inv_witness(mul, inv, unit)
        if w is not None:
            raise InvNotInvolutive(f"involution law {w[0]} fails",
                                   tuple(labels[i] for i in w[1]))
    if sai is None:
        sai = derive_sai(mul, inv, unit, labels)
    sai = np.asarray(sai, dtype=np.int64)
    return Fsg(name, labels, mul, unit, inv, sai, carrier)


def build_fsg(desc: dict, strict: bool = True) -> Fsg:
    """Build from ``{"elements", "unit", "mul", "inv", "sai"?}`` (labels throughout)."""
    labels = list(desc["elements"])
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise UnknownElement("duplicate element label", ())

    def ix(lab):
        if lab not in index:
            raise UnknownElement(f"unknown element {lab!r}", (lab,))
        return index[lab]

    if "unit" not in desc:
        raise NoUnit("no unit given", ())
    unit = ix(desc["unit"])
    rows = desc["mul"]
    n = len(labels)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise UnknownElement("multiplication table is not n×n", ())
    mul = [[ix(v) for v in row] for row in rows]
    inv_map = desc["inv"]
    inv = [ix(inv_map[lab]) if lab in inv_map else ix(None) for lab in labels]
    sai = None
    if desc.get("sai") is not None:
        sai_map = desc["sai"]
        sai = [ix(sai_map[lab]) if lab in sai_map else ix(None) for lab in labels]
    return make_fsg(desc.get("name", "S"), labels, mul, unit, inv, sai, strict=strict)


def trivial_fsg() -> Fsg:
    return make_fsg("1", ["1"], [[0]], 0, [0], [0])


# -- axiom checks -----------------------------------------------------------

def _lab(S: Fsg, w):
    return None if w is None else tuple(S.labels[i] for i in w)


def _monoid_checks(S: Fsg, rep: Report):
    mul, inv, sai = S.mul, S.inv, S.sai
    d = np.arange(len(S))
    rep.add("associative", (w := _assoc_witness(mul)) is None, _lab(S, w))
    w = _unit_witness(mul, S.unit)
    rep.add("unit", w is None, _lab(S, None if w is None else (w,)))
    rep.add("(1) 1† = 1", inv[S.unit] == S.unit, _lab(S, (S.unit,)) if inv[S.unit] != S.unit else None)
    w = _first(inv[mul] != mul[np.ix_(inv, inv)].T)
    rep.add("(1) (s·t)† = t†·s†", w is None, _lab(S, w))
    w = _first(inv[inv] != d)
    rep.add("(1) s†† = s", w is None, _lab(S, w))
    w = _first(mul[sai, sai] != sai)
    rep.add("(2) ′s·′s = ′s", w is None, _lab(S, w))
    w = _first(inv[sai] != sai)
    rep.add("(2) (′s)† = ′s", w is None, _lab(S, w))
    z = S.zero
    w = _first((mul[z] != z) | (mul[:, z] != z))
    rep.add("(3) 0·s = 0 = s·0", w is None, _lab(S, w))


def check_foulis(S: Fsg) -> Report:
    rep = Report(f"foulis {S.name}")
    _monoid_checks(S, rep)
    z = S.zero
    ann = S.mul == z                                  # ann[s, x]: s·x = 0
    n = len(S)
    gen = np.zeros((n, n), dtype=bool)                # gen[s, x]: x ∈ ′s·S
    rows = S.mul[S.sai]
    gen[np.repeat(np.arange(n), n), rows.ravel()] = True
    w = _first(ann != gen)
    rep.add("(4) s·x = 0 iff x = ′s·y for some y", w is None, _lab(S, w))
    return rep


def check_foulis_alt(S: Fsg) -> Report:
    rep = Report(f"foulis (4′) {S.name}")
    _monoid_checks(S, rep)
    mul, inv, sai = S.mul, S.inv, S.sai
    z = S.zero
    rep.add("(4′) ′0 = 1", sai[z] == S.unit, None if sai[z] == S.unit else (S.labels[z],))
    w = _first(mul[np.arange(len(S)), sai] != z)
    rep.add("(4′) s·′s = 0", w is None, _lab(S, w))
    # T[t, s] = ′(′(t†·s†)·s)·t
    inner = sai[mul[np.ix_(inv, inv)]]                 # ′(t†·s†), indexed [t, s]
    outer = sai[mul[inner, np.arange(len(S))[None, :]]]
    T = mul[outer, np.arange(len(S))[:, None]]
    w = _first(T != np.arange(len(S))[:, None])
    rep.add("(4′) t = ′(′(t†·s†)·s)·t", w is None, _lab(S, w))
    alt, orig = rep.passed, check_foulis(S).passed
    rep.add("verdict agrees with axioms (1)-(4)", alt == orig,
            None if alt == orig else (f"(4′) {alt}", f"(4) {orig}"))
    return rep


# -- endo-homsets -----------------------------------------------------------

def sai_formula(s: GalMor) -> list[int]:
    """Lower table of ``′s``: ``x ↦ a^⊥ ∨ (a ∧ x^⊥)`` with ``a = s^*(1)``."""
    X = s.dom
    a = s.upper[X.top]
    return [X.join_tab[X.ortho[a]][X.meet_tab[a][X.ortho[x]]] for x in X]


def end_foulis(X: Oml, budget: int = DEFAULT_BUDGET) -> Fsg:
    """End(X) of Galois endomaps, with ``′s`` from the lattice formula."""
    X.require_orthomodular()
    mors = enumerate_hom(X, X, budget)
    H = homset(X, X)
    mul = comp_table(X, X, X)
    unit = H.index[np.array(identity(X).lower, dtype=np.int16).tobytes()]
    inv = np.array([H.index[np.array(f.upper, dtype=np.int16).tobytes()] for f in mors])
    sai = np.array([H.index[np.array(sai_formula(f), dtype=np.int16).tobytes()] for f in mors])
    return Fsg(f"End({X.name})", [f.label() for f in mors], np.asarray(mul, dtype=np.int64),
               unit, inv, sai, list(mors))


def fsg_from_morphisms(name: str, mors: Sequence, compose_fn: Callable, dagger_fn: Callable,
                       unit_mor, sai_fn: Callable, label_fn: Callable = str) -> Fsg:
    pos = {m: i for i, m in enumerate(mors)}
    n = len(mors)
    mul = np.array([[pos[compose_fn(a, b)] for b in mors] for a in mors], dtype=np.int64).reshape(n, n)
    inv = np.array([pos[dagger_fn(a)] for a in mors], dtype=np.int64)
    sai = np.array([pos[sai_fn(a)] for a in mors], dtype=np.int64)
    return Fsg(name, [label_fn(m) for m in mors], mul, pos[unit_mor], inv, sai, list(mors))


def end_foulis_generic(D, X, budget: int = DEFAULT_BUDGET) -> Fsg:
    """End(X) in a dagger kernel category, with ``′s = ker(s) ∘ ker(s)†``."""
    mors = D.hom(X, X, budget)

    def sai_fn(s):
        k = D.kernel(s)[1]
        return D.compose(k, D.dagger(k))

    return fsg_from_morphisms(f"End({D.obj_label(X)})", mors, D.compose, D.dagger,
                              D.identity(X), sai_fn, D.mor_label)


def conjugate(f, s, compose_fn: Callable = compose, dagger_fn: Callable = dagger):
    """``f ∘ s ∘ f†``."""
    return compose_fn(compose_fn(f, s), dagger_fn(f))


def conjugation_defect(pool: Sequence[tuple[Oml, Oml]], budget: int = DEFAULT_BUDGET):
    """First (f, s, t) with ``conj(f, s) ∘ conj(f, t) != conj(f, s ∘ t)``."""
    for X, Y in pool:
        ends = enumerate_hom(X, X, budget)
        for f in enumerate_hom(X, Y, budget):
            for s in ends:
                cs = conjugate(f, s)
                for t in ends:
                    if compose(cs, conjugate(f, t)) != conjugate(f, compose(s, t)):
                        return f, s, t
    return None
