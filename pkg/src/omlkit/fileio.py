"""JSON file formats for lattices, morphisms and semigroups.

Lattice:    {"name", "elements": [label], "order": [[lo, hi], ...], "ortho": {label: label}}
Morphism:   {"dom", "cod", "lower": {x: y}}; dom/cod are a corpus name or an inline lattice
Semigroup:  {"name", "elements", "unit", "mul": [[label]], "inv": {label: label}, "sai"?: {...}}

Serialisation writes the covering relation as the order, so files stay short.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .errors import ParseError, UnknownCorpusName
from .foulis import Fsg, build_fsg
from .galois import GalMor, from_lower
from .oml import Oml, build_lattice, corpus

Source = Union[str, Path, dict]


def load_json(src: Source) -> Any:
    if isinstance(src, dict):
        return src
    path = Path(src)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: cannot read ({e.strerror})", (str(path),)) from None
    except UnicodeDecodeError:
        raise ParseError(f"{path}: not UTF-8", (str(path),)) from None
    return loads(text, str(path))


def loads(text: str, where: str = "<string>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{where}: line {e.lineno} column {e.colno}: {e.msg}",
                         (where, e.lineno, e.colno)) from None


def _field(obj: Any, key: str, kind: type, where: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object", (where,))
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}", (where, key))
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"{where}: field {key!r} should be a {kind.__name__}", (where, key))
    return val


def _labels(obj: dict, where: str) -> list[str]:
    elems = _field(obj, "elements", list, where)
    for i, e in enumerate(elems):
        if not isinstance(e, str):
            raise ParseError(f"{where}: elements[{i}] is not a string", (where, f"elements[{i}]"))
    return elems


# -- lattices ---------------------------------------------------------------

def parse_lattice(obj: Any, where: str = "lattice", strict: bool = True) -> Oml:
    labels = _labels(obj, where)
    order = _field(obj, "order", list, where)
    for i, p in enumerate(order):
        if not (isinstance(p, list) and len(p) == 2):
            raise ParseError(f"{where}: order[{i}] is not a [lo, hi] pair", (where, f"order[{i}]"))
    ortho = _field(obj, "ortho", dict, where)
    name = obj.get("name", "L")
    if not isinstance(name, str):
        raise ParseError(f"{where}: field 'name' should be a str", (where, "name"))
    return build_lattice({"name": name, "elements": labels, "order": order, "ortho": ortho},
                         strict=strict)


def load_lattice(src: Source, strict: bool = True) -> Oml:
    where = "lattice" if isinstance(src, dict) else str(src)
    return parse_lattice(load_json(src), where, strict)


def covers(L: Oml) -> list[tuple[int, int]]:
    """Pairs ``x < y`` with nothing strictly between."""
    lt = [[L.leq[x][y] and x != y for y in L] for x in L]
    return [(x, y) for x in L for y in L
            if lt[x][y] and not any(lt[x][z] and lt[z][y] for z in L)]


def lattice_to_dict(L: Oml) -> dict:
    lab = L.labels
    return {
        "name": L.name,
        "elements": list(lab),
        "order": [[lab[x], lab[y]] for x, y in covers(L)],
        "ortho": {lab[x]: lab[L.ortho[x]] for x in L},
    }


# -- morphisms --------------------------------------------------------------

def _lattice_ref(obj: Any, where: str) -> Oml:
    if isinstance(obj, str):
        try:
            return corpus(obj)
        except UnknownCorpusName as e:
            raise ParseError(f"{where}: {e}", (where, obj)) from None
    if isinstance(obj, dict):
        return parse_lattice(obj, where)
    raise ParseError(f"{where}: expected a corpus name or a lattice object", (where,))


def parse_morphism(obj: Any, where: str = "morphism") -> GalMor:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object", (where,))
    for key in ("dom", "cod"):
        if key not in obj:
            raise ParseError(f"{where}: missing field {key!r}", (where, key))
    X = _lattice_ref(obj["dom"], f"{where}.dom")
    Y = _lattice_ref(obj["cod"], f"{where}.cod")
    lower = _field(obj, "lower", dict, where)
    for x, y in lower.items():
        if x not in X.index:
            raise ParseError(f"{where}.lower: {x!r} is not in {X.name}", (where, x))
        if not isinstance(y, str) or y not in Y.index:
            raise ParseError(f"{where}.lower[{x!r}]: {y!r} is not in {Y.name}", (where, x))
    missing = [lab for lab in X.labels if lab not in lower]
    if missing:
        raise ParseError(f"{where}.lower: no value for {missing[0]!r}", (where, missing[0]))
    return from_lower(X, Y, lower)


def load_morphism(src: Source) -> GalMor:
    where = "morphism" if isinstance(src, dict) else str(src)
    return parse_morphism(load_json(src), where)


def _ref_to_json(L: Oml):
    try:
        if corpus(L.name) == L:
            return L.name
    except UnknownCorpusName:
        pass
    return lattice_to_dict(L)


def morphism_to_dict(f: GalMor) -> dict:
    X, Y = f.dom, f.cod
    return {
        "dom": _ref_to_json(X),
        "cod": _ref_to_json(Y),
        "lower": {X.labels[x]: Y.labels[f.lower[x]] for x in X},
    }


# -- semigroups -------------------------------------------------------------

def parse_fsg(obj: Any, where: str = "semigroup", strict: bool = True) -> Fsg:
    labels = _labels(obj, where)
    mul = _field(obj, "mul", list, where)
    _field(obj, "inv", dict, where)
    if "sai" in obj and not isinstance(obj["sai"], dict):
        raise ParseError(f"{where}: field 'sai' should be a dict", (where, "sai"))
    if "unit" in obj and not isinstance(obj["unit"], str):
        raise ParseError(f"{where}: field 'unit' should be a str", (where, "unit"))
    for i, row in enumerate(mul):
        if not isinstance(row, list):
            raise ParseError(f"{where}: mul[{i}] is not a list", (where, f"mul[{i}]"))
    return build_fsg({**obj, "elements": labels}, strict=strict)


def load_fsg(src: Source, strict: bool = True) -> Fsg:
    where = "semigroup" if isinstance(src, dict) else str(src)
    return parse_fsg(load_json(src), where, strict)


def fsg_to_dict(S: Fsg) -> dict:
    lab = S.labels
    n = len(S)
    return {
        "name": S.name,
        "elements": list(lab),
        "unit": lab[S.unit],
        "mul": [[lab[int(S.mul[a, b])] for b in range(n)] for a in range(n)],
        "inv": {lab[a]: lab[int(S.inv[a])] for a in range(n)},
        "sai": {lab[a]: lab[int(S.sai[a])] for a in range(n)},
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def save(obj: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")

