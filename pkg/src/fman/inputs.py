"""JSON input files: algebras and polynomial F-manifold charts.

Files use 1-based indices.  Bracket entries are given for i < j and product
entries for i <= j; the rest follows by (anti)symmetry.  A lower entry is
accepted too, but if both orders are present they must agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

from .algebra import AlgebraStructure, StructureError
from .coord import PolyFManifold
from .exact import rat
from .poly import Poly


class InputError(ValueError):
    """Malformed or invalid input; the CLI maps it to exit code 2."""


KINDS = ("algebra", "poly-manifold")
OPTION_KEYS = {"degree_bound", "leaf_vars", "report_format", "points"}
ALGEBRA_KEYS = {"kind", "name", "description", "dim", "bracket", "product", "options"}
POLY_KEYS = {"kind", "name", "description", "nvars", "S", "options"}


@dataclass(frozen=True)
class InputSpec:
    kind: str
    payload: Any
    options: dict = field(default_factory=dict)
    name: str = ""
    description: str = ""


def _reject_unknown(obj: dict, allowed: set, where: str):
    extra = set(obj) - allowed
    if extra:
        raise InputError(f"unknown key(s) in {where}: {', '.join(sorted(extra))}")


def _coef(x, where: str):
    if isinstance(x, float):
        raise InputError(f"{where}: floating-point coefficient {x!r}; write it as 'p/q'")
    try:
        return rat(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: cannot read coefficient {x!r}") from exc


def _index(entry: dict, key: str, n: int, where: str) -> int:
    v = entry.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
        raise InputError(f"{where}: index {key}={v!r} outside 1..{n}")
    return v - 1


def _parse_constants(entries, n: int, antisymmetric: bool, label: str) -> dict:
    if not isinstance(entries, list):
        raise InputError(f"'{label}' must be a list of entries")
    given = {}
    for pos, e in enumerate(entries):
        where = f"{label}[{pos}]"
        if not isinstance(e, dict):
            raise InputError(f"{where}: expected an object")
        _reject_unknown(e, {"i", "j", "k", "coef"}, where)
        i, j, k = (_index(e, key, n, where) for key in "ijk")
        c = _coef(e.get("coef", 1), where)
        if antisymmetric and i == j and c:
            raise InputError(f"{where}: bracket [e{i + 1},e{i + 1}] must vanish (i,j,k)=({i + 1},{j + 1},{k + 1})")
        if (i, j, k) in given and given[(i, j, k)] != c:
            raise InputError(f"{where}: conflicting duplicate entry at (i,j,k)=({i + 1},{j + 1},{k + 1})")
        given[(i, j, k)] = c
    grid = [[[rat(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in given.items():
        mirror = -c if antisymmetric else c
        if (j, i, k) in given and given[(j, i, k)] != mirror and i != j:
            kind = "antisymmetric" if antisymmetric else "symmetric"
            raise InputError(f"{label} not {kind} at (i,j,k)=({i + 1},{j + 1},{k + 1})")
        grid[i][j][k] = c
        grid[j][i][k] = mirror if i != j else c
    return grid


def _description(obj: dict) -> str:
    d = obj.get("description", "")
    if not isinstance(d, str):
        raise InputError("'description' must be a string")
    return d


def _parse_options(opts, nvars: Optional[int]) -> dict:
    if opts is None:
        return {}
    if not isinstance(opts, dict):
        raise InputError("'options' must be an object")
    _reject_unknown(opts, OPTION_KEYS, "options")
    out = {}
    if "degree_bound" in opts:
        d = opts["degree_bound"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError(f"degree_bound must be a non-negative integer, got {d!r}")
        out["degree_bound"] = d
    if "leaf_vars" in opts:
        lv = opts["leaf_vars"]
        if not isinstance(lv, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in lv):
            raise InputError("leaf_vars must be a list of 1-based variable indices")
        if nvars is not None and any(not 1 <= x <= nvars for x in lv):
            raise InputError(f"leaf_vars must lie in 1..{nvars}")
        out["leaf_vars"] = tuple(sorted(set(lv)))
    if "report_format" in opts:
        if opts["report_format"] not in ("json", "md"):
            raise InputError("report_format must be 'json' or 'md'")
        out["report_format"] = opts["report_format"]
    if "points" in opts:
        pts = opts["points"]
        if not isinstance(pts, list) or any(not isinstance(p, list) for p in pts):
            raise InputError("points must be a list of coordinate lists")
        parsed = []
        for p in pts:
            if nvars is not None and len(p) != nvars:
                raise InputError(f"point {p!r} does not have {nvars} coordinates")
            parsed.append(tuple(_coef(x, "points") for x in p))
        out["points"] = tuple(parsed)
    return out


def parse_algebra(obj: dict) -> InputSpec:
    _reject_unknown(obj, ALGEBRA_KEYS, "algebra input")
    n = obj.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"'dim' must be a positive integer, got {n!r}")
    name = obj.get("name", "algebra")
    if not isinstance(name, str):
        raise InputError("'name' must be a string")
    c = _parse_constants(obj.get("bracket", []), n, True, "bracket")
    s = _parse_constants(obj.get("product", []), n, False, "product")
    try:
        alg = AlgebraStructure.from_constants(name, n, c, s)
    except StructureError as exc:
        raise InputError(str(exc)) from exc
    return InputSpec("algebra", alg, _parse_options(obj.get("options"), None), name, _description(obj))


def parse_poly_manifold(obj: dict) -> InputSpec:
    _reject_unknown(obj, POLY_KEYS, "poly-manifold input")
    n = obj.get("nvars")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"'nvars' must be a positive integer, got {n!r}")
    comps = {}
    entries = obj.get("S", [])
    if not isinstance(entries, list):
        raise InputError("'S' must be a list of entries")
    for pos, e in enumerate(entries):
        where = f"S[{pos}]"
        if not isinstance(e, dict):
            raise InputError(f"{where}: expected an object")
        _reject_unknown(e, {"i", "j", "k", "poly"}, where)
        i, j, k = (_index(e, key, n, where) for key in "ijk")
        try:
            p = Poly.from_json(n, e.get("poly", []))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{where}: {exc}") from exc
        if (i, j, k) in comps and comps[(i, j, k)] != p:
            raise InputError(f"{where}: conflicting duplicate entry at (i,j,k)=({i + 1},{j + 1},{k + 1})")
        comps[(i, j, k)] = p
    try:
        m = PolyFManifold.from_components(n, comps)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    name = obj.get("name", "poly-manifold")
    if not isinstance(name, str):
        raise InputError("'name' must be a string")
    return InputSpec("poly-manifold", m, _parse_options(obj.get("options"), n), name, _description(obj))


def parse_input(data) -> InputSpec:
    """Parse UTF-8 JSON bytes (or text) into a validated :class:`InputSpec`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("top-level JSON value must be an object")
    kind = obj.get("kind")
    if kind == "algebra":
        return parse_algebra(obj)
    if kind == "poly-manifold":
        return parse_poly_manifold(obj)
    raise InputError(f"'kind' must be one of {KINDS}, got {kind!r}")


def _options_json(opts: dict) -> dict:
    out = {}
    for key, v in opts.items():
        if key == "leaf_vars":
            v = list(v)
        elif key == "points":
            v = [[str(x) for x in p] for p in v]
        out[key] = v
    return out


def algebra_to_json(a: AlgebraStructure) -> dict:
    n = a.dim
    bracket = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "coef": str(a.bracket[i][j][k])}
        for i in range(n) for j in range(i + 1, n) for k in range(n) if a.bracket[i][j][k]
    ]
    product = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "coef": str(a.product[i][j][k])}
        for i in range(n) for j in range(i, n) for k in range(n) if a.product[i][j][k]
    ]
    return {"kind": "algebra", "name": a.name, "dim": n, "bracket": bracket, "product": product}


def manifold_to_json(m: PolyFManifold) -> dict:
    n = m.nvars
    S = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "poly": m.s[i][j][k].to_json()}
        for i in range(n) for j in range(i, n) for k in range(n) if m.s[i][j][k]
    ]
    return {"kind": "poly-manifold", "nvars": n, "S": S}


def field_to_json(x) -> dict:
    return {"nvars": len(x), "X": [{"i": i + 1, "poly": p.to_json()} for i, p in enumerate(x) if p]}


def field_from_json(obj: dict) -> tuple:
    _reject_unknown(obj, {"nvars", "X"}, "vector field")
    n = obj["nvars"]
    comps = [Poly.zero(n) for _ in range(n)]
    for pos, e in enumerate(obj.get("X", [])):
        _reject_unknown(e, {"i", "poly"}, f"X[{pos}]")
        comps[_index(e, "i", n, f"X[{pos}]")] = Poly.from_json(n, e["poly"])
    return tuple(comps)


def dump_input(spec: InputSpec) -> bytes:
    """Canonical JSON for an input; ``parse_input(dump_input(s)) == s``."""
    if spec.kind == "algebra":
        obj = algebra_to_json(spec.payload)
    else:
        obj = manifold_to_json(spec.payload)
        obj["name"] = spec.name
    if spec.description:
        obj["description"] = spec.description
    opts = _options_json(spec.options)
    if opts:
        obj["options"] = opts
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


# Bundled examples -----------------------------------------------------------

def _catalog_dir():
    return resources.files("fman") / "catalog"


def catalog_names() -> list:
    return sorted(p.name[:-5] for p in _catalog_dir().iterdir() if p.name.endswith(".json"))


def load_example(name: str) -> InputSpec:
    if name.endswith(".json"):
        name = name[:-5]
    path = _catalog_dir() / f"{name}.json"
    if not path.is_file():
        raise InputError(f"no bundled example named {name!r}")
    return parse_input(path.read_bytes())


def example_bytes(name: str) -> bytes:
    return (_catalog_dir() / f"{name}.json").read_bytes()


def catalog() -> list:
    """(name, kind, description) for every bundled example."""
    out = []
    for name in catalog_names():
        spec = load_example(name)
        out.append((name, spec.kind, spec.description))
    return out
