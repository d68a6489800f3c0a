"""A uniform interface over finite dagger kernel categories, plus the
constructions derivable from it alone (cokernels, images, pullbacks of
kernels, kernel-subobject lattices).
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections import Counter
from typing import Any, Iterable, Optional, Sequence

from .errors import OmlkitError
from .galois import DEFAULT_BUDGET, GalMor
from .oml import Oml, assemble
from .report import Report


class DaggerKernelCategory(ABC):
    """Capability record for a finite dagger kernel category.

    Morphisms must be hashable with structural equality.
    """

    name = "D"

    def __init__(self):
        self._cache: dict = {}

    @abstractmethod
    def objects(self) -> list: ...

    @abstractmethod
    def hom(self, X, Y, budget: int = DEFAULT_BUDGET) -> list: ...

    @abstractmethod
    def dom(self, f): ...

    @abstractmethod
    def cod(self, f): ...

    @abstractmethod
    def compose(self, g, f): ...

    @abstractmethod
    def dagger(self, f): ...

    @abstractmethod
    def identity(self, X): ...

    @abstractmethod
    def zero_object(self): ...

    @abstractmethod
    def zero(self, X, Y): ...

    @abstractmethod
    def kernel(self, f) -> tuple[Any, Any]:
        """``(K, k)`` with ``k: K -> dom f`` a dagger kernel of f."""

    def obj_label(self, X) -> str:
        return str(X)

    def mor_label(self, f) -> str:
        return str(f)

    def ksubs(self, X, budget: int = DEFAULT_BUDGET) -> list:
        """Canonical kernel monos into X; instances override with native forms."""
        return generic_ksubs(self, X, budget)

    def sub_label(self, m) -> str:
        return self.mor_label(m)

    def cached(self, key, thunk):
        if key not in self._cache:
            self._cache[key] = thunk()
        return self._cache[key]


D_ = DaggerKernelCategory


def compose_all(D: D_, *fs):
    acc = fs[-1]
    for g in reversed(fs[:-1]):
        acc = D.compose(g, acc)
    return acc


def is_zero(D: D_, f) -> bool:
    return f == D.zero(D.dom(f), D.cod(f))


def cokernel(D: D_, f):
    """``coker f = ker(f†)†``."""
    return D.dagger(D.kernel(D.dagger(f))[1])


def perp(D: D_, m):
    """``m^⊥ = ker(m†)``."""
    return D.kernel(D.dagger(m))[1]


def effect(D: D_, m):
    return D.compose(m, D.dagger(m))


def sub_le(D: D_, m, n) -> bool:
    """``m <= n`` for kernel monos into the same object."""
    return D.compose(effect(D, n), m) == m


def factorizations(D: D_, g, m, budget: int = DEFAULT_BUDGET) -> list:
    """Every h with ``m ∘ h = g``."""
    return [h for h in D.hom(D.dom(g), D.dom(m), budget) if D.compose(m, h) == g]


def inverse_image(D: D_, f, n):
    """``f⁻¹(n) = ker(coker(n) ∘ f)``."""
    return D.kernel(D.compose(cokernel(D, n), f))[1]


def image(D: D_, g):
    return D.kernel(cokernel(D, g))[1]


def direct_image(D: D_, f, m):
    return image(D, D.compose(f, m))


def generic_ksubs(D: D_, X, budget: int = DEFAULT_BUDGET) -> list:
    """Kernels of all maps out of X into listed objects, one per subobject."""
    seen = {}
    for Y in D.objects():
        for f in D.hom(X, Y, budget):
            k = D.kernel(f)[1]
            seen.setdefault(effect(D, k), k)
    return list(seen.values())


class KSubLattice:
    """The kernel subobjects of one object, as an Oml plus lookup tables."""

    def __init__(self, D: D_, X, budget: int = DEFAULT_BUDGET):
        self.D, self.X = D, X
        self.monos = list(D.ksubs(X, budget))
        self.pos = {effect(D, m): i for i, m in enumerate(self.monos)}
        if len(self.pos) != len(self.monos):
            raise OmlkitError(f"duplicate kernel subobjects of {D.obj_label(X)}")
        n = len(self.monos)
        leq = [[sub_le(D, m, k) for k in self.monos] for m in self.monos]
        ortho = [self.locate(perp(D, m)) for m in self.monos]
        labels = [D.sub_label(m) for m in self.monos]
        self.oml: Oml = assemble(f"KSub({D.obj_label(X)})", labels, leq, ortho)
        assert len(self.oml) == n

    def locate(self, m) -> int:
        key = effect(self.D, m)
        if key not in self.pos:
            raise OmlkitError(f"{self.D.mor_label(m)} is not a listed kernel subobject",
                              (self.D.mor_label(m),))
        return self.pos[key]


def ksub_lattice(D: D_, X, budget: int = DEFAULT_BUDGET) -> KSubLattice:
    return D.cached(("ksub", X), lambda: KSubLattice(D, X, budget))


def ksub_functor(D: D_, f, budget: int = DEFAULT_BUDGET) -> GalMor:
    """KSub(f) with lower ``m ↦ (∃_f m)^⊥`` and upper ``n ↦ f⁻¹(n^⊥)``."""
    A = ksub_lattice(D, D.dom(f), budget)
    B = ksub_lattice(D, D.cod(f), budget)
    lower = [B.locate(perp(D, direct_image(D, f, m))) for m in A.monos]
    upper = [A.locate(inverse_image(D, f, perp(D, n))) for n in B.monos]
    return GalMor(A.oml, B.oml, lower, upper)


# -- interface verification -------------------------------------------------

def _pairs(D: D_, objs):
    for X in objs:
        for Y in objs:
            yield X, Y


def verify_interface(D: D_, objs: Optional[Sequence] = None,
                     budget: int = DEFAULT_BUDGET) -> Report:
    """Dagger laws plus the zero object and kernel contracts."""
    objs = list(D.objects() if objs is None else objs)
    rep = Report(f"interface {D.name}")
    lab = D.mor_label
    z = D.zero_object()
    wit = next((D.obj_label(X) for X in objs
                if len(D.hom(z, X, budget)) != 1 or len(D.hom(X, z, budget)) != 1), None)
    rep.add("zero object is initial and final", wit is None, wit)
    wit = next((D.obj_label(X) for X in objs if D.dagger(D.identity(X)) != D.identity(X)), None)
    rep.add("id† = id", wit is None, wit)
    w_inv = w_ker = w_zero = w_mono = w_perp = None
    for X, Y in _pairs(D, objs):
        for f in D.hom(X, Y, budget):
            if w_inv is None and D.dagger(D.dagger(f)) != f:
                w_inv = lab(f)
            K, k = D.kernel(f)
            if w_ker is None and (D.dom(k) != K or D.cod(k) != X):
                w_ker = lab(f)
            if w_zero is None and not is_zero(D, D.compose(f, k)):
                w_zero = lab(f)
            if w_mono is None and D.compose(D.dagger(k), k) != D.identity(K):
                w_mono = lab(f)
            kp = perp(D, k)
            if w_perp is None and effect(D, image(D, kp)) != effect(D, kp):
                w_perp = lab(f)
    rep.add("f†† = f", w_inv is None, w_inv)
    rep.add("ker f: K -> dom f", w_ker is None, w_ker)
    rep.add("f ∘ ker f = 0", w_zero is None, w_zero)
    rep.add("ker(f)† ∘ ker f = id", w_mono is None, w_mono)
    rep.add("ker(f)^⊥ is a kernel", w_perp is None, w_perp)
    wit = next(((lab(f), lab(g))
                for X in objs for Y in objs for W in objs
                for f in D.hom(X, Y, budget) for g in D.hom(Y, W, budget)
                if D.dagger(D.compose(g, f)) != D.compose(D.dagger(f), D.dagger(g))), None)
    rep.add("(g ∘ f)† = f† ∘ g†", wit is None, wit)
    return rep


def verify_kernel_universal(D: D_, objs: Sequence, zpool: Sequence,
                            budget: int = DEFAULT_BUDGET) -> Report:
    """Every g with f∘g = 0 factors through ker f exactly once; no other g does."""
    rep = Report(f"kernels {D.name}")
    counts: dict = {}

    def mediations(k, K, Z):
        if (Z, k) not in counts:
            counts[Z, k] = Counter(D.compose(k, h) for h in D.hom(Z, K, budget))
        return counts[Z, k]

    def failures():
        for X in objs:
            for Y in objs:
                for f in D.hom(X, Y, budget):
                    K, k = D.kernel(f)
                    for Z in zpool:
                        cnt = mediations(k, K, Z)
                        for g in D.hom(Z, X, budget):
                            want = 1 if is_zero(D, D.compose(f, g)) else 0
                            if cnt.get(g, 0) != want:
                                yield D.mor_label(f), D.mor_label(g), cnt.get(g, 0)

    wit = next(failures(), None)
    rep.add("unique mediation through ker f", wit is None, wit)
    return rep


def check_generator(D: D_, I, objs: Sequence, budget: int = DEFAULT_BUDGET) -> Report:
    """Parallel maps that agree on every ``x: I -> X`` are equal."""
    rep = Report(f"generator {D.obj_label(I)} in {D.name}")

    def collisions():
        for X in objs:
            pts = D.hom(I, X, budget)
            for Y in objs:
                seen = {}
                for f in D.hom(X, Y, budget):
                    sig = tuple(D.compose(f, x) for x in pts)
                    if sig in seen:
                        yield D.mor_label(seen[sig]), D.mor_label(f)
                    seen[sig] = f

    wit = next(collisions(), None)
    rep.add("distinct parallel maps are separated by a point", wit is None, wit)
    return rep
