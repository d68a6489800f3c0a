"""Finite ortholattices and orthomodular lattices.

Elements are dense indices into ``Oml.labels``.  Every binary operation is a
precomputed table, so the sweeps elsewhere in the package are plain lookups.
Public helpers accept either an index or a label wherever an element is
expected, and always return indices.
"""
from __future__ import annotations

import functools
import re
from collections import deque
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    NoMeet,
    NotAPoset,
    NotOrthomodular,
    OrthoViolation,
    UnknownCorpusName,
    UnknownElement,
)
from .report import Report

ElemLike = Union[int, str]


class Oml:
    """An immutable finite ortholattice, flagged orthomodular or not.

    Equality and hashing are structural (labels, order, orthocomplement) so
    that independently computed downsets of the same element coincide.
    """

    __slots__ = (
        "name", "labels", "index", "leq", "ortho", "meet_tab", "join_tab",
        "top", "bottom", "is_ortholattice", "orthomodular", "origin", "_hash",
    )

    def __init__(self, name, labels, leq, ortho, meet_tab, join_tab, top, bottom,
                 is_ortholattice, orthomodular, origin=None):
        self.name = name
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self.ortho = tuple(ortho)
        self.meet_tab = tuple(tuple(row) for row in meet_tab)
        self.join_tab = tuple(tuple(row) for row in join_tab)
        self.top = top
        self.bottom = bottom
        self.is_ortholattice = is_ortholattice
        self.orthomodular = orthomodular
        # (parent lattice, tuple mapping own indices to parent indices)
        self.origin = origin
        self._hash = hash((self.labels, self.ortho, self.leq))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Oml):
            return NotImplemented
        return (self._hash == other._hash and self.labels == other.labels
                and self.ortho == other.ortho and self.leq == other.leq)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Oml({self.name!r}, {len(self)} elements)"

    def elem(self, x: ElemLike) -> int:
        if isinstance(x, str):
            try:
                return self.index[x]
            except KeyError:
                raise UnknownElement(f"{x!r} is not an element of {self.name}", (x,)) from None
        if isinstance(x, int) and not isinstance(x, bool) and 0 <= x < len(self.labels):
            return x
        raise UnknownElement(f"{x!r} is not an element of {self.name}", (x,))

    def label(self, i: int) -> str:
        return self.labels[i]

    def meet(self, x: ElemLike, y: ElemLike) -> int:
        return self.meet_tab[self.elem(x)][self.elem(y)]

    def join(self, x: ElemLike, y: ElemLike) -> int:
        return self.join_tab[self.elem(x)][self.elem(y)]

    def perp(self, x: ElemLike) -> int:
        return self.ortho[self.elem(x)]

    def le(self, x: ElemLike, y: ElemLike) -> bool:
        return self.leq[self.elem(x)][self.elem(y)]

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet_tab[acc][x]
        return acc

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join_tab[acc][x]
        return acc

    @property
    def join_irreducibles(self) -> tuple[int, ...]:
        return _join_irreducibles(self)

    def require_orthomodular(self):
        if not self.orthomodular:
            raise NotOrthomodular(f"{self.name} is not orthomodular")


@functools.lru_cache(maxsize=None)
def _join_irreducibles(L: Oml) -> tuple[int, ...]:
    n = len(L)
    out = []
    for x in range(n):
        if x == L.bottom:
            continue
        below = [y for y in range(n) if y != x and L.leq[y][x]]
        # covers of x from below
        covers = [y for y in below
                  if not any(z != y and L.leq[y][z] for z in below)]
        if len(covers) == 1:
            out.append(x)
    height = [sum(L.leq[y][x] for y in range(n)) for x in range(n)]
    return tuple(sorted(out, key=lambda x: (height[x], x)))


# -- construction -----------------------------------------------------------

def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    leq = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in pairs:
        leq[lo][hi] = True
    for k in range(n):
        row_k = leq[k]
        for i in range(n):
            if leq[i][k]:
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


def _cycle_witness(n, pairs, x, y):
    adj = [[] for _ in range(n)]
    for lo, hi in pairs:
        adj[lo].append(hi)

    def path(src, dst):
        prev = {src: None}
        q = deque([src])
        while q:
            u = q.popleft()
            if u == dst:
                break
            for v in adj[u]:
                if v not in prev:
                    prev[v] = u
                    q.append(v)
        out = [dst]
        while out[-1] != src:
            out.append(prev[out[-1]])
        return out[::-1]

    return path(x, y) + path(y, x)[1:]


def _ortholattice_failures(n, leq, ortho, meet_tab, bottom):
    """Yield (axiom, witness) for the ortholattice axioms, in scan order."""
    for x in range(n):
        if ortho[ortho[x]] != x:
            yield "involution", (x,)
            break
    for x in range(n):
        hit = False
        for y in range(n):
            if leq[x][y] and not leq[ortho[y]][ortho[x]]:
                yield "antitone", (x, y)
                hit = True
                break
        if hit:
            break
    for x in range(n):
        if meet_tab[x][ortho[x]] != bottom:
            yield "complement", (x,)
            break


def assemble(name: str, labels: Sequence[str], leq, ortho: Sequence[int],
             strict: bool = True, origin=None) -> Oml:
    """Build an Oml from a complete order matrix and an ortho table."""
    n = len(labels)
    if n == 0:
        raise NoMeet("a lattice needs at least one element")
    meet_tab = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
            best = [m for m in lower if all(leq[z][m] for z in lower)]
            if not best:
                raise NoMeet(f"{labels[x]} and {labels[y]} have no meet",
                             (labels[x], labels[y]))
            meet_tab[x][y] = meet_tab[y][x] = best[0]
    tops = [t for t in range(n) if all(leq[z][t] for z in range(n))]
    if not tops:
        raise NoMeet("no top element", ())
    top = tops[0]
    bottom = meet_tab[0][0]
    for x in range(n):
        bottom = meet_tab[bottom][x]
    fails = list(_ortholattice_failures(n, leq, ortho, meet_tab, bottom))
    if fails and strict:
        axiom, wit = fails[0]
        raise OrthoViolation(
            f"ortholattice axiom '{axiom}' fails at " + ", ".join(labels[w] for w in wit),
            tuple(labels[w] for w in wit))
    join_tab = [[ortho[meet_tab[ortho[x]][ortho[y]]] for y in range(n)] for x in range(n)]
    is_ol = not fails
    om = is_ol and _om_scan(n, leq, ortho, meet_tab, join_tab)[0] is None
    return Oml(name, labels, leq, ortho, meet_tab, join_tab, top, bottom, is_ol, om, origin)


def build_lattice(desc: dict, strict: bool = True) -> Oml:
    """Build a lattice from ``{"name", "elements", "order", "ortho"}``.

    ``order`` may be any generating relation of ``[lo, hi]`` pairs; its
    reflexive-transitive closure is taken.  With ``strict=False`` ortholattice
    violations are recorded rather than raised.
    """
    labels = list(desc["elements"])
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise UnknownElement(f"duplicate element label {lab!r}", (lab,))
        index[lab] = i

    def ix(lab):
        try:
            return index[lab]
        except (KeyError, TypeError):
            raise UnknownElement(f"unknown element {lab!r}", (lab,)) from None

    pairs = [(ix(lo), ix(hi)) for lo, hi in desc.get("order", [])]
    n = len(labels)
    leq = _closure(n, pairs)
    for x in range(n):
        for y in range(x + 1, n):
            if leq[x][y] and leq[y][x]:
                cyc = _cycle_witness(n, pairs, x, y)
                raise NotAPoset(f"order has a cycle through {labels[x]} and {labels[y]}",
                                tuple(labels[c] for c in cyc))
    otab = desc.get("ortho", {})
    ortho = []
    for lab in labels:
        if lab not in otab:
            raise OrthoViolation(f"ortho table has no entry for {lab!r}", (lab,))
        ortho.append(ix(otab[lab]))
    for lab in otab:
        ix(lab)
    return assemble(desc.get("name", "L"), labels, leq, ortho, strict=strict)


# -- operations -------------------------------------------------------------

def meet(L: Oml, x: ElemLike, y: ElemLike) -> int:
    return L.meet(x, y)


def join(L: Oml, x: ElemLike, y: ElemLike) -> int:
    return L.join(x, y)


def ortho(L: Oml, x: ElemLike) -> int:
    return L.perp(x)


def leq(L: Oml, x: ElemLike, y: ElemLike) -> bool:
    return L.le(x, y)


def sasaki_hook(L: Oml, m: ElemLike, n: ElemLike) -> int:
    """``m ⊃ n = m^⊥ ∨ (m ∧ n)``."""
    m, n = L.elem(m), L.elem(n)
    return L.join_tab[L.ortho[m]][L.meet_tab[m][n]]


def and_then(L: Oml, k: ElemLike, m: ElemLike) -> int:
    """``k & m = m ∧ (m^⊥ ∨ k)``."""
    k, m = L.elem(k), L.elem(m)
    return L.meet_tab[m][L.join_tab[L.ortho[m]][k]]


# -- checks -----------------------------------------------------------------

def check_ortholattice(L: Oml) -> Report:
    rep = Report(f"ortholattice {L.name}")
    n = len(L)
    fails = dict(_ortholattice_failures(n, L.leq, L.ortho, L.meet_tab, L.bottom))
    lab = L.labels
    for axiom in ("involution", "antitone", "complement"):
        wit = fails.get(axiom)
        rep.add(axiom, wit is None, None if wit is None else tuple(lab[w] for w in wit))
    return rep


def _om_scan(n, leq, ortho, meet_tab, join_tab):
    """First failing pair for each of the three orthomodularity conditions."""
    w1 = w2 = w3 = None
    bot = _bottom(n, meet_tab)
    for x in range(n):
        for y in range(n):
            if not leq[x][y]:
                continue
            if w1 is None and y != join_tab[x][meet_tab[ortho[x]][y]]:
                w1 = (x, y)
            if w2 is None and x != meet_tab[y][join_tab[ortho[y]][x]]:
                w2 = (x, y)
            if w3 is None and meet_tab[ortho[x]][y] == bot and x != y:
                w3 = (x, y)
    return w1, w2, w3


def _bottom(n, meet_tab):
    b = 0
    for x in range(n):
        b = meet_tab[b][x]
    return b


def check_orthomodular(L: Oml) -> Report:
    rep = Report(f"orthomodular {L.name}")
    if not L.is_ortholattice:
        rep.add("ortholattice", False, note="orthomodularity needs an ortholattice")
        return rep
    lab = L.labels
    wits = _om_scan(len(L), L.leq, L.ortho, L.meet_tab, L.join_tab)
    names = ("x<=y => y = x v (x'^y)", "x<=y => x = y ^ (y' v x)", "x<=y, x'^y=0 => x=y")
    for name, w in zip(names, wits):
        rep.add(name, w is None, None if w is None else (lab[w[0]], lab[w[1]]))
    verdicts = [w is None for w in wits]
    rep.add("three conditions agree", len(set(verdicts)) == 1,
            None if len(set(verdicts)) == 1 else tuple(str(v) for v in verdicts))
    return rep


def check_boolean(L: Oml) -> Report:
    rep = Report(f"boolean {L.name}")
    m, j = L.meet_tab, L.join_tab
    n = len(L)
    wit = None
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                    wit = (x, y, z)
                    break
            if wit:
                break
        if wit:
            break
    rep.add("distributive", wit is None, None if wit is None else tuple(L.labels[w] for w in wit))
    return rep


def is_distributive_triple(L: Oml, x, y, z) -> bool:
    x, y, z = L.elem(x), L.elem(y), L.elem(z)
    return L.meet(x, L.join(y, z)) == L.join(L.meet(x, y), L.meet(x, z))


# -- downsets ---------------------------------------------------------------

def downset(L: Oml, a: ElemLike) -> Oml:
    """The principal downset ``↓a`` with relative orthocomplement ``a ∧ u^⊥``."""
    a = L.elem(a)
    L.require_orthomodular()
    return _downset(L, a)


@functools.lru_cache(maxsize=None)
def _downset(L: Oml, a: int) -> Oml:
    members = tuple(u for u in L if L.leq[u][a])
    pos = {u: i for i, u in enumerate(members)}
    suffix = "@" + L.labels[a]
    labels = [L.labels[u] + suffix for u in members]
    leq = [[L.leq[u][v] for v in members] for u in members]
    ortho = [pos[L.meet_tab[a][L.ortho[u]]] for u in members]
    return assemble(f"↓{L.labels[a]}({L.name})", labels, leq, ortho, origin=(L, members))


# -- corpus -----------------------------------------------------------------

_ALIASES = {"2": "boolean(1)", "1": "zero", "0": "zero", "hex": "hexagon", "o6": "hexagon"}


def from_tables(name: str, labels, leq_pairs, ortho_map) -> Oml:
    return build_lattice({"name": name, "elements": list(labels),
                          "order": [list(p) for p in leq_pairs], "ortho": dict(ortho_map)})


def boolean(n: int) -> Oml:
    atoms = "abcd"[:n]
    full = (1 << n) - 1

    def lab(mask):
        if mask == 0:
            return "0"
        if mask == full:
            return "1"
        return "".join(atoms[i] for i in range(n) if mask >> i & 1)

    masks = range(1 << n)
    labels = [lab(m) for m in masks]
    order = [(lab(a), lab(b)) for a in masks for b in masks if a | b == b and a != b]
    ortho = {lab(m): lab(full ^ m) for m in masks}
    name = {0: "0", 1: "2"}.get(n, f"B{n}")
    return from_tables(name, labels, order, ortho)


def mo(n: int) -> Oml:
    atoms = []
    for c in "abc"[:n]:
        atoms += [c, c + "'"]
    labels = ["0"] + atoms + ["1"]
    order = [("0", x) for x in atoms] + [(x, "1") for x in atoms] + [("0", "1")]
    ortho = {"0": "1", "1": "0"}
    for c in "abc"[:n]:
        ortho[c], ortho[c + "'"] = c + "'", c
    return from_tables(f"MO{n}", labels, order, ortho)


def hexagon() -> Oml:
    labels = ["0", "a", "b", "b'", "a'", "1"]
    order = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    ortho = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    return from_tables("HEX", labels, order, ortho)


def zero() -> Oml:
    return from_tables("0", ["0"], [], {"0": "0"})


@functools.lru_cache(maxsize=None)
def corpus(name: str) -> Oml:
    """Named test lattices: zero, boolean(n) n<=4, mo(n) n<=3, hexagon.

    Short aliases ``2``, ``B2``..``B4``, ``MO1``..``MO3`` and ``HEX`` work too.
    """
    key = name.strip()
    key = _ALIASES.get(key.lower(), key)
    m = re.fullmatch(r"[Bb](\d)", key)
    if m:
        key = f"boolean({m.group(1)})"
    m = re.fullmatch(r"(?i)mo(\d)", key)
    if m:
        key = f"mo({m.group(1)})"
    if key.upper() == "HEX":
        key = "hexagon"
    m = re.fullmatch(r"boolean\((\d)\)", key)
    if m and int(m.group(1)) <= 4:
        return boolean(int(m.group(1)))
    m = re.fullmatch(r"mo\((\d)\)", key)
    if m and 1 <= int(m.group(1)) <= 3:
        return mo(int(m.group(1)))
    if key == "hexagon":
        return hexagon()
    if key == "zero":
        return zero()
    raise UnknownCorpusName(f"unknown corpus lattice {name!r}", (name,))


TWO_NAME = "boolean(1)"


def two() -> Oml:
    return corpus(TWO_NAME)


# -- isomorphism ------------------------------------------------------------

def find_iso(A: Oml, B: Oml) -> Optional[tuple[int, ...]]:
    """First ortho-preserving order isomorphism A -> B, by backtracking."""
    n = len(A)
    if n != len(B):
        return None

    def sig(L):
        down = [sum(L.leq[y][x] for y in L) for x in L]
        up = [sum(L.leq[x][y] for y in L) for x in L]
        return [(down[x], up[x], x == L.ortho[x]) for x in L]

    sa, sb = sig(A), sig(B)
    if sorted(sa) != sorted(sb):
        return None
    cand = [[y for y in B if sb[y] == sa[x]] for x in A]
    order = sorted(A, key=lambda x: (len(cand[x]), x))
    phi = [-1] * n
    used = [False] * n

    def consistent(x, y):
        for x2 in A:
            y2 = phi[x2]
            if y2 < 0:
                continue
            if A.leq[x][x2] != B.leq[y][y2] or A.leq[x2][x] != B.leq[y2][y]:
                return False
        ox = A.ortho[x]
        if phi[ox] >= 0 and phi[ox] != B.ortho[y]:
            return False
        if ox == x and B.ortho[y] != y:
            return False
        return True

    def go(i):
        if i == n:
            return True
        x = order[i]
        for y in cand[x]:
            if used[y] or not consistent(x, y):
                continue
            phi[x] = y
            used[y] = True
            if go(i + 1):
                return True
            phi[x] = -1
            used[y] = False
        return False

    return tuple(phi) if go(0) else None
