"""Command-line workbench.

Exit codes: 0 pass, 1 a check failed, 2 malformed input, 3 budget exceeded.
Inputs named on the command line are JSON files, or corpus names such as
``MO2`` or ``boolean(3)`` when no file of that name exists.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import acceptance, category as cat, dkc, fileio, foulis, galois as gal
from . import karoubi as kar, kernels as ker, oml
from .errors import BudgetExceeded, OmlkitError
from .galois import DEFAULT_BUDGET
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_MALFORMED, EXIT_BUDGET = 0, 1, 2, 3


class Malformed(Exception):
    """Raised while loading inputs; maps to exit code 2."""


def _load(fn, source: str, *args):
    try:
        return fn(source, *args)
    except BudgetExceeded:
        raise
    except OmlkitError as e:
        raise Malformed(str(e)) from None


def lattice_arg(source: str, strict: bool = True) -> oml.Oml:
    if Path(source).is_file():
        return _load(fileio.load_lattice, source, strict)
    return _load(oml.corpus, source)


def morphism_arg(source: str) -> gal.GalMor:
    return _load(fileio.load_morphism, source)


def fsg_arg(source: str, budget: int, strict: bool = True) -> foulis.Fsg:
    """A semigroup file, or a lattice (file or corpus name) standing for End(X)."""
    if Path(source).is_file():
        obj = _load(fileio.load_json, source)
        if isinstance(obj, dict) and "mul" in obj:
            return _load(fileio.parse_fsg, obj, source, strict)
    return foulis.end_foulis(lattice_arg(source), budget)


# -- output -----------------------------------------------------------------

class Out:
    def __init__(self, args):
        self.json = args.format == "json"
        self.witness = args.witness
        self.reports: list[Report] = []
        self.data: dict = {}
        self.lines: list[str] = []

    def report(self, rep: Report):
        self.reports.append(rep)

    def say(self, line: str, key: Optional[str] = None, value=None):
        self.lines.append(line)
        if key is not None:
            self.data[key] = value

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.json:
            doc = dict(self.data)
            if self.reports:
                doc["reports"] = [r.to_dict() for r in self.reports]
                doc["passed"] = all(r.passed for r in self.reports)
            stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
            return
        for line in self.lines:
            stream.write(line + "\n")
        for r in self.reports:
            stream.write(r.format(witness=True) + "\n")

    @property
    def code(self) -> int:
        return EXIT_PASS if all(r.passed for r in self.reports) else EXIT_FAIL


def _yn(b: bool) -> str:
    return "yes" if b else "no"


# -- oml --------------------------------------------------------------------

def cmd_oml_check(args, out: Out) -> int:
    L = lattice_arg(args.lattice, strict=False)
    r_ol = oml.check_ortholattice(L)
    r_om = oml.check_orthomodular(L)
    r_b = oml.check_boolean(L)
    out.say(f"{L.name}: {len(L)} elements")
    out.say(f"ortholattice: {_yn(r_ol.passed)}", "ortholattice", r_ol.passed)
    out.say(f"orthomodular: {_yn(r_om.passed)}, boolean: {_yn(r_b.passed)}", "orthomodular", r_om.passed)
    out.data["boolean"] = r_b.passed
    out.report(r_ol)
    out.report(r_om)
    if args.witness:
        # distributivity is informative, not a pass condition
        out.say(r_b.format())
    return out.code


def cmd_oml_sasaki(args, out: Out) -> int:
    out.report(ker.sasaki_report(lattice_arg(args.lattice)))
    return out.code


def cmd_oml_downset(args, out: Out) -> int:
    L = lattice_arg(args.lattice)
    a = _load(L.elem, args.element)
    D = oml.downset(L, a)
    doc = fileio.lattice_to_dict(D)
    if out.json:
        out.data["downset"] = doc
    else:
        out.say(fileio.dumps(doc).rstrip())
    return EXIT_PASS


# -- gal --------------------------------------------------------------------

def _mor_out(out: Out, key: str, f: gal.GalMor):
    doc = fileio.morphism_to_dict(f)
    out.data[key] = doc
    lower = ", ".join(f"{x}->{y}" for x, y in doc["lower"].items())
    out.lines.append(f"{key}: {f.dom.name} -> {f.cod.name} lower {{{lower}}}")


def cmd_gal_compose(args, out: Out) -> int:
    f, g = morphism_arg(args.first), morphism_arg(args.second)
    try:
        h = gal.compose(g, f)
    except OmlkitError as e:
        raise Malformed(str(e)) from None
    _mor_out(out, "composite", h)
    return EXIT_PASS


def cmd_gal_dagger(args, out: Out) -> int:
    _mor_out(out, "dagger", gal.dagger(morphism_arg(args.morphism)))
    return EXIT_PASS


def cmd_gal_kernel(args, out: Out) -> int:
    f = morphism_arg(args.morphism)
    k = ker.kernel(f)
    out.say(f"kernel: ↓{k.label} in {f.dom.name}", "kernel", k.label)
    _mor_out(out, "embedding", k.embedding)
    return EXIT_PASS


def cmd_gal_cokernel(args, out: Out) -> int:
    f = morphism_arg(args.morphism)
    c = ker.cokernel(f)
    out.say(f"cokernel object: {c.cod.name}", "object", c.cod.name)
    _mor_out(out, "cokernel", c)
    return EXIT_PASS


def cmd_gal_factor(args, out: Out) -> int:
    f = morphism_arg(args.morphism)
    F = ker.factorize(f)
    for key in ("e", "m", "i", "j_dag"):
        _mor_out(out, key, getattr(F, key))
    rep = Report(f"factorisation of {f.label()}")
    why = acceptance.factorization_report(f)
    rep.add("f = i ∘ m ∘ j†, e zero-epi, m zero-epi and zero-mono, i dagger mono",
            why is None, why)
    out.report(rep)
    return out.code


def cmd_gal_homcount(args, out: Out) -> int:
    X, Y = lattice_arg(args.dom), lattice_arg(args.cod)
    homs = gal.enumerate_hom(X, Y, args.budget)
    out.say(f"|Hom({X.name},{Y.name})| = {len(homs)}", "count", len(homs))
    if args.witness:
        out.data["morphisms"] = [f.label() for f in homs]
        out.lines.extend("  " + f.label() for f in homs)
    return EXIT_PASS


# -- foulis -----------------------------------------------------------------

def cmd_foulis_check(args, out: Out) -> int:
    S = fsg_arg(args.semigroup, args.budget, strict=False)
    out.say(f"{S.name}: {len(S)} elements")
    out.report(foulis.check_foulis(S))
    out.report(foulis.check_foulis_alt(S))
    return out.code


def cmd_foulis_end(args, out: Out) -> int:
    X = lattice_arg(args.lattice)
    S = foulis.end_foulis(X, args.budget)
    doc = fileio.fsg_to_dict(S)
    if args.output:
        fileio.save(doc, args.output)
        out.say(f"wrote {S.name} ({len(S)} elements) to {args.output}", "elements", len(S))
    elif out.json:
        out.data["semigroup"] = doc
    else:
        out.say(fileio.dumps(doc).rstrip())
    return EXIT_PASS


# -- karoubi ----------------------------------------------------------------

def _kar_obj(S: foulis.Fsg, label: str) -> kar.KarObj:
    s = _load(S.elem, label)
    if s not in S.self_adjoint_idempotents():
        raise Malformed(f"{label!r} is not a self-adjoint idempotent of {S.name}")
    return kar.KarObj(S, s)


def cmd_karoubi_objects(args, out: Out) -> int:
    S = fsg_arg(args.semigroup, args.budget)
    objs = kar.kar_objects(S)
    out.say(f"{S.name}: {len(objs)} objects", "objects", [str(o) for o in objs])
    out.lines.extend("  " + str(o) for o in objs)
    return EXIT_PASS


def cmd_karoubi_klattice(args, out: Out) -> int:
    S = fsg_arg(args.semigroup, args.budget)
    s = _kar_obj(S, args.object or S.labels[S.unit])
    rep = kar.k_lattice_report(S, s)
    out.report(rep)
    if rep.passed:
        K = kar.k_lattice(S, s)
        out.say(f"K_{s}: {len(K)} elements", "size", len(K))
        if args.witness:
            out.data["lattice"] = fileio.lattice_to_dict(K)
            out.lines.extend("  " + lab for lab in K.labels)
    return out.code


def cmd_karoubi_ksubiso(args, out: Out) -> int:
    S = fsg_arg(args.semigroup, args.budget)
    objs = [_kar_obj(S, args.object)] if args.object else kar.kar_objects(S)
    for s in objs:
        out.report(kar.ksub_iso_check(S, s, args.budget))
    return out.code


# -- dkc --------------------------------------------------------------------

def _targets(args) -> list[oml.Oml]:
    return [lattice_arg(n) for n in (args.targets or acceptance.SMALL)]


def cmd_dkc_ksub(args, out: Out) -> int:
    X = lattice_arg(args.lattice)
    out.report(ker.ksub_lattice(X, _targets(args), args.budget))
    out.report(ker.char_iso(X, _targets(args), args.budget))
    return out.code


def cmd_dkc_boolean(args, out: Out) -> int:
    X = lattice_arg(args.lattice)
    G = dkc.OMLatGal([X])
    out.report(dkc.check_boolean_dkc(G, X, args.budget))
    return out.code


def cmd_dkc_generator(args, out: Out) -> int:
    objs = _targets(args)
    G = dkc.OMLatGal(objs)
    out.report(cat.check_generator(G, oml.two(), objs, args.budget))
    return out.code


def cmd_dkc_powerset(args, out: Out) -> int:
    X = lattice_arg(args.lattice)
    if args.size < 0:
        raise Malformed("the set size must be non-negative")
    out.report(dkc.adjunction_check(args.size, X, args.budget))
    out.report(dkc.graph_factorization_check(args.size, args.budget))
    return out.code


# -- roundtrip and verify-all ----------------------------------------------

def cmd_roundtrip(args, out: Out) -> int:
    X = lattice_arg(args.lattice)
    K, iso = kar.roundtrip(X, args.budget)
    rep = Report(f"K_1(End({X.name})) = {X.name}")
    rep.add("isomorphism found", iso is not None, None if iso else (len(K), len(X)))
    out.report(rep)
    if iso is not None and args.witness:
        pairs = {K.labels[i]: X.labels[j] for i, j in enumerate(iso)}
        out.data["bijection"] = pairs
        out.lines.extend(f"  {k} -> {v}" for k, v in pairs.items())
    return out.code


def cmd_verify_all(args, out: Out) -> int:
    if args.corpus:
        for name in args.corpus:
            lattice_arg(name, strict=False)
    cfg = acceptance.Config(budget=args.budget, corpus=args.corpus)
    ids = args.only or [c[0] for c in acceptance.CRITERIA]
    results = []
    for cid in ids:
        if not 1 <= cid <= len(acceptance.CRITERIA):
            raise Malformed(f"no criterion {cid}")
        rep = acceptance.run_criterion(cid, cfg)
        results.append(rep)
        out.reports.append(rep)
    passed = sum(r.passed for r in results)
    if out.json:
        out.data["summary"] = {"passed": passed, "total": len(results)}
        return out.code
    out.reports = []         # text mode prints one line per criterion instead
    for r in results:
        out.lines.append(f"{r.subject}: {'PASS' if r.passed else 'FAIL'}")
        detail = r.format().splitlines()[1:]
        out.lines.extend(detail if args.witness else [ln for ln in detail if ln.startswith("  FAIL")])
    out.lines.append(f"{passed}/{len(results)} criteria passed")
    return EXIT_PASS if passed == len(results) else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def _budget(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET,
                        help="maximum enumeration candidates per homset")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--witness", action="store_true", help="print bijections and extra detail")

    p = argparse.ArgumentParser(prog="omlkit", description="Finite orthomodular lattice workbench")
    top = p.add_subparsers(dest="group", required=True)

    def group(name, help_):
        return top.add_parser(name, help=help_).add_subparsers(dest="cmd", required=True)

    def leaf(sub, name, fn, help_, *positionals):
        q = sub.add_parser(name, parents=[common], help=help_)
        for arg, h in positionals:
            q.add_argument(arg, help=h)
        q.set_defaults(fn=fn)
        return q

    g = group("oml", "lattice checks")
    leaf(g, "check", cmd_oml_check, "ortholattice, orthomodular and Boolean checks",
         ("lattice", "lattice file or corpus name"))
    leaf(g, "sasaki", cmd_oml_sasaki, "Sasaki hook and and-then identities", ("lattice", "lattice"))
    leaf(g, "downset", cmd_oml_downset, "the lattice ↓a",
         ("lattice", "lattice"), ("element", "element label"))

    g = group("gal", "Galois morphisms")
    leaf(g, "compose", cmd_gal_compose, "SECOND ∘ FIRST",
         ("first", "morphism file applied first"), ("second", "morphism file applied second"))
    leaf(g, "dagger", cmd_gal_dagger, "swap lower and upper", ("morphism", "morphism file"))
    leaf(g, "kernel", cmd_gal_kernel, "kernel subobject", ("morphism", "morphism file"))
    leaf(g, "cokernel", cmd_gal_cokernel, "cokernel map", ("morphism", "morphism file"))
    leaf(g, "factor", cmd_gal_factor, "zero-epi/kernel factorisation", ("morphism", "morphism file"))
    leaf(g, "homcount", cmd_gal_homcount, "size of Hom(X,Y)", ("dom", "lattice"), ("cod", "lattice"))

    g = group("foulis", "Foulis semigroups")
    leaf(g, "check", cmd_foulis_check, "both axiomatisations",
         ("semigroup", "semigroup file, or a lattice for End(X)"))
    q = leaf(g, "end", cmd_foulis_end, "write End(X) as a semigroup file", ("lattice", "lattice"))
    q.add_argument("-o", "--output", help="output path (default stdout)")

    g = group("karoubi", "Karoubi envelope of a Foulis semigroup")
    leaf(g, "objects", cmd_karoubi_objects, "self-adjoint idempotents", ("semigroup", "semigroup"))
    q = leaf(g, "klattice", cmd_karoubi_klattice, "the lattice K_s", ("semigroup", "semigroup"))
    q.add_argument("object", nargs="?", help="self-adjoint idempotent (default the unit)")
    q = leaf(g, "ksubiso", cmd_karoubi_ksubiso, "K_s = KSub(s)", ("semigroup", "semigroup"))
    q.add_argument("object", nargs="?", help="one object (default all)")

    g = group("dkc", "dagger kernel category checks")
    for name, fn, h in (("ksub", cmd_dkc_ksub, "KSub(X) = X and points of X"),
                        ("boolean", cmd_dkc_boolean, "disjoint kernels are orthogonal")):
        q = leaf(g, name, fn, h, ("lattice", "lattice"))
        q.add_argument("--targets", nargs="+", help="lattices for naturality squares")
    q = leaf(g, "generator", cmd_dkc_generator, "2 separates maps")
    q.add_argument("--targets", nargs="+", help="objects (default 2, B2, MO2)")
    q = leaf(g, "powerset", cmd_dkc_powerset, "free powerset adjunction", ("lattice", "lattice"))
    q.add_argument("size", type=int, help="size of the set A")

    q = top.add_parser("roundtrip", parents=[common], help="X -> End(X) -> K_1")
    q.add_argument("lattice")
    q.set_defaults(fn=cmd_roundtrip)
    q = top.add_parser("verify-all", parents=[common], help="run every acceptance criterion")
    q.add_argument("--corpus", nargs="+", help="lattices asserted orthomodular")
    q.add_argument("--only", nargs="+", type=int, help="criterion ids")
    q.set_defaults(fn=cmd_verify_all)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_MALFORMED
    out = Out(args)
    try:
        code = args.fn(args, out)
    except Malformed as e:
        print(f"omlkit: malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except BudgetExceeded as e:
        print(f"omlkit: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except OmlkitError as e:
        print(f"omlkit: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        out.emit()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
    return code


if __name__ == "__main__":
    sys.exit(main())
