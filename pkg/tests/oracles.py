"""Naive reference computations, independent of the package internals.

Lattices are read only through their label tuple, order matrix and
orthocomplement table; everything else is recomputed by brute force.
"""
from __future__ import annotations

import itertools


def galois_lowers(X, Y):
    """All lower tables l: X -> Y that admit an upper u with x <= u(y) iff y <= l(x)."""
    nx, ny = len(X.labels), len(Y.labels)
    out = []
    for low in itertools.product(range(ny), repeat=nx):
        ok = True
        for y in range(ny):
            # candidates for u(y): every x with y <= l(x); the set must be a principal downset
            s = {x for x in range(nx) if Y.leq[y][low[x]]}
            tops = [m for m in s if all(X.leq[x][m] for x in s)]
            if not tops or {x for x in range(nx) if X.leq[x][tops[0]]} != s:
                ok = False
                break
        if ok:
            out.append(low)
    return out


def meet_naive(L, x, y):
    lows = [z for z in range(len(L.labels)) if L.leq[z][x] and L.leq[z][y]]
    best = [z for z in lows if all(L.leq[w][z] for w in lows)]
    return best[0] if best else None


def join_naive(L, x, y):
    ups = [z for z in range(len(L.labels)) if L.leq[x][z] and L.leq[y][z]]
    best = [z for z in ups if all(L.leq[z][w] for w in ups)]
    return best[0] if best else None


def orthomodular_naive(L):
    n = range(len(L.labels))
    o = L.ortho
    return all(y == join_naive(L, x, meet_naive(L, o[x], y))
               for x in n for y in n if L.leq[x][y])


def compose_lowers(g, f, ortho_mid):
    """Lower table of g ∘ f: x ↦ g(f(x)^⊥)."""
    return tuple(g[ortho_mid[v]] for v in f)


def upper_naive(X, Y, low):
    """u(y) = the largest x with y <= l(x)."""
    nx = len(X.labels)
    out = []
    for y in range(len(Y.labels)):
        s = [x for x in range(nx) if Y.leq[y][low[x]]]
        out.append(next(m for m in s if all(X.leq[x][m] for x in s)))
    return tuple(out)


def self_adjoint_idempotents(X):
    """Endomaps s with s† = s and s ∘ s = s, by brute force over lower tables."""
    out = []
    for low in galois_lowers(X, X):
        if upper_naive(X, X, low) == low and compose_lowers(low, low, X.ortho) == low:
            out.append(low)
    return out
