"""JSON documents for trees, points and systems, plus the word-list text format.

Tree::

    {"scalar": {"kind": "rational"} | {"kind": "quadratic", "d": 5},
     "vertices": [...], "edges": [{"u": id, "v": id, "len": SCALAR}]}

Point: ``{"v": id}`` or ``{"e": edge_index, "off": SCALAR}``.  System::

    {"tree": TREE, "isometries": [{"name": "a", "domain": [POINT...], "images": [POINT...]}]}

with an optional ``"core": [POINT...]`` for systems on a subtree.  A
SCALAR is ``"p/q"`` or ``{"a": "p/q", "b": "r/s"}`` meaning ``a + b sqrt d``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .catalog import BUNDLED_NAMES, bundled
from .errors import FormatError, InputError, ScalarContextError
from .scalars import parse_scalar, scalar_to_json
from .systems import IsometrySystem, PartialIsometry
from .trees import FiniteMetricTree, TreePoint

__all__ = [
    "tree_to_json",
    "tree_from_json",
    "point_to_json",
    "point_from_json",
    "system_to_json",
    "system_from_json",
    "parse_system",
    "serialize_system",
    "load_system",
    "systems_equal",
    "read_words",
    "write_words",
]


def _field(tree, points=()):
    """The common ``d`` of every irrational edge length or offset, or ``None``."""
    scalars = [length for _, _, length in tree.edges] + [p.offset for p in points if p.edge is not None]
    ds = {x.d for x in scalars if x.d}
    if len(ds) > 1:
        raise ScalarContextError(f"scalars mix the fields {sorted(ds)}")
    return ds.pop() if ds else None


def _scalar_kind(d):
    return {"kind": "quadratic", "d": d} if d else {"kind": "rational"}


def tree_to_json(tree, d=None):
    d = d or _field(tree)
    return {
        "scalar": _scalar_kind(d),
        "vertices": list(tree.vertices),
        "edges": [{"u": u, "v": v, "len": scalar_to_json(length)} for u, v, length in tree.edges],
    }


def _require(doc, key, kind, location):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"missing key {key!r}", location)
    value = doc[key]
    if not isinstance(value, kind):
        raise FormatError(f"{key!r} must be a {kind.__name__}", location)
    return value


def _scalar_context(doc, location):
    spec = _require(doc, "scalar", dict, location)
    kind = spec.get("kind")
    if kind == "rational":
        return None
    if kind == "quadratic":
        d = spec.get("d")
        if not isinstance(d, int) or isinstance(d, bool) or d < 2:
            raise FormatError(f"quadratic context needs an integer d >= 2, got {d!r}", f"{location}.scalar")
        return d
    raise FormatError(f"unknown scalar kind {kind!r}", f"{location}.scalar")


def tree_from_json(doc, location="tree"):
    """Returns ``(tree, d)`` where ``d`` is the quadratic field parameter or ``None``."""
    d = _scalar_context(doc, location)
    vertices = _require(doc, "vertices", list, location)
    edges = []
    for i, e in enumerate(_require(doc, "edges", list, location)):
        loc = f"{location}.edges[{i}]"
        if not isinstance(e, dict) or not {"u", "v", "len"} <= set(e):
            raise FormatError("edge needs keys u, v, len", loc)
        edges.append((e["u"], e["v"], parse_scalar(e["len"], d, f"{loc}.len")))
    try:
        tree = FiniteMetricTree(vertices, edges)
    except InputError as exc:
        raise FormatError(str(exc), location) from None
    return tree, d


def point_to_json(p):
    if p.edge is None:
        return {"v": p.vertex}
    return {"e": p.edge, "off": scalar_to_json(p.offset)}


def point_from_json(obj, tree, d=None, location="point"):
    if not isinstance(obj, dict):
        raise FormatError("a point must be an object", location)
    if set(obj) == {"v"}:
        p = TreePoint(vertex=obj["v"])
    elif set(obj) == {"e", "off"}:
        if not isinstance(obj["e"], int) or not 0 <= obj["e"] < len(tree.edges):
            raise FormatError(f"unknown edge {obj['e']!r}", location)
        try:
            p = tree.point(obj["e"], parse_scalar(obj["off"], d, f"{location}.off"))
        except ScalarContextError as exc:
            raise FormatError(str(exc), location) from None
    else:
        raise FormatError('a point is {"v": id} or {"e": index, "off": SCALAR}', location)
    try:
        tree.check_point(p)
    except InputError as exc:
        raise FormatError(str(exc), location) from None
    return p


def system_to_json(sys):
    t = sys.tree
    pts = list(sys.core.points)
    for g in sys.generators:
        pts += list(g.domain.points) + list(g.images)
    doc = {"tree": tree_to_json(t, _field(t, pts))}
    if sys.name:
        doc["name"] = sys.name
    if not t.same(sys.core, t.whole()):
        doc["core"] = [point_to_json(p) for p in sys.core.points]
    doc["isometries"] = [
        {
            "name": g.name,
            "domain": [point_to_json(p) for p in g.domain.points],
            "images": [point_to_json(p) for p in g.images],
        }
        for g in sys.generators
    ]
    return doc


def system_from_json(doc):
    if not isinstance(doc, dict):
        raise FormatError("a system document must be an object", "$")
    tree, d = tree_from_json(_require(doc, "tree", dict, "$"), "tree")
    gens = []
    for i, iso in enumerate(_require(doc, "isometries", list, "$")):
        loc = f"isometries[{i}]"
        name = _require(iso, "name", str, loc)
        dom = [point_from_json(p, tree, d, f"{loc}.domain[{j}]") for j, p in enumerate(_require(iso, "domain", list, loc))]
        img = [point_from_json(p, tree, d, f"{loc}.images[{j}]") for j, p in enumerate(_require(iso, "images", list, loc))]
        gens.append(PartialIsometry(tree, dom, img, name))
    core = None
    if "core" in doc:
        core = tree.hull(point_from_json(p, tree, d, f"core[{j}]") for j, p in enumerate(_require(doc, "core", list, "$")))
    return IsometrySystem(tree, gens, core=core, name=doc.get("name", ""))


def parse_system(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return system_from_json(doc)


def serialize_system(sys, indent=2):
    return json.dumps(system_to_json(sys), indent=indent)


def load_system(source):
    """A bundled catalog name, or the path of a system JSON file."""
    if isinstance(source, str) and source.upper() in BUNDLED_NAMES:
        return bundled(source)
    path = Path(source)
    if not path.exists():
        raise InputError(f"{source!r} is neither a bundled system nor a file")
    return parse_system(path.read_text())


def trees_equal(s, t):
    return s.vertices == t.vertices and s.edges == t.edges


def systems_equal(a, b):
    """Structural equality: same tree, core, names, domains and images."""
    return (
        trees_equal(a.tree, b.tree)
        and a.core == b.core
        and a.alphabet == b.alphabet
        and all(g.domain == h.domain and g.images == h.images for g, h in zip(a.generators, b.generators))
    )


def read_words(text, alphabet):
    """One word per line (``a.b.A`` or ``abA``); blank lines and ``#`` comments are skipped."""
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                out.append(alphabet.parse(line))
            except InputError as exc:
                raise FormatError(str(exc), f"line {i}") from None
    return out


def write_words(words, alphabet):
    return "".join(alphabet.format(w) + "\n" for w in words)
