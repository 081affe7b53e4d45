"""Scenario files: a TOML description of one presentation.

Grammar (all keys lower case, cycle strings 1-based)::

    [group]
    kind = "symmetric" | "alternating" | "explicit" | "product"
    n = 4                          # symmetric, alternating
    degree = 6                     # explicit
    generators = ["(1 2)", ...]    # explicit
    [[group.factors]]              # product: one table per factor, same keys
    kind = "symmetric"
    n = 3

    [subgroup]
    kind = "point_stabilizer" | "explicit"
    point = 4                      # plain groups, default: the last point
    points = [3, 3]                # product groups, one local point per factor
    generators = ["(1 2)", ...]    # explicit

    [[representation]]
    kind = "standard" | "perm_minus_trivial" | "outer_tensor" | "class_function"
    position = 1                   # outer_tensor: 1-based factor slot
    values = [2, 0, -1]            # class_function: canonical class order; "a/b" strings allowed
    [representation.inner]         # outer_tensor: representation of the factor
    kind = "standard"
    [representation.subgroup]      # perm_minus_trivial: defaults to [subgroup]
    kind = "point_stabilizer"

    [signature]
    genus = 0
    [[signature.branch]]
    element = "(1 2)"
    count = 4

Every semantic error is reported with the line of the offending key.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import tomlkit

from .constructions import Family, FamilySpec
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    Alternating,
    CycleParseError,
    Explicit,
    Permutation,
    Product,
    Symmetric,
    generate_group,
    parse_cycles,
    point_stabilizer,
    subgroup,
)
from .prym import Branch, GeometricSignature, InvalidInput, PresentationInput, validate_signature
from .reptheory import ExplicitClassFunction, OuterTensor, PermMinusTrivial, StandardOfSymmetric


class ScenarioError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<scenario>"):
        self.message = message
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class _Locator:
    """Maps (table path, key) to source lines by scanning headers and keys."""

    def __init__(self, text: str):
        self.keys: dict = {}
        self.headers: dict = {}
        counters: dict = {}
        current: tuple = ()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[["):
                name = line[2:line.index("]]")].strip()
                parts = tuple(p.strip() for p in name.split("."))
                parent = self._resolve(parts[:-1], counters)
                key = parent + (parts[-1],)
                counters[key] = counters.get(key, -1) + 1
                current = key + (counters[key],)
                self.headers[current] = lineno
            elif line.startswith("["):
                name = line[1:line.index("]")].strip()
                parts = tuple(p.strip() for p in name.split("."))
                current = self._resolve(parts[:-1], counters) + (parts[-1],)
                self.headers[current] = lineno
            elif "=" in line:
                key = line.split("=", 1)[0].strip().strip('"')
                self.keys[current + (key,)] = lineno

    @staticmethod
    def _resolve(parts: tuple, counters: dict) -> tuple:
        path: tuple = ()
        for p in parts:
            path = path + (p,)
            if path in counters:
                path = path + (counters[path],)
        return path

    def line(self, path: tuple, key: str | None = None) -> int | None:
        if key is not None and path + (key,) in self.keys:
            return self.keys[path + (key,)]
        while path:
            if path in self.headers:
                return self.headers[path]
            path = path[:-1]
        return None


@dataclass
class Scenario:
    input: PresentationInput
    document: dict
    source: str


class _Builder:
    def __init__(self, doc: dict, loc: _Locator, source: str, enumeration_bound: int):
        self.doc = doc
        self.loc = loc
        self.source = source
        self.bound = enumeration_bound

    def fail(self, message, path, key=None):
        raise ScenarioError(message, self.loc.line(path, key), self.source)

    def table(self, parent: dict, key: str, path: tuple, required=True) -> dict:
        value = parent.get(key)
        if value is None:
            if required:
                self.fail(f"missing [{'.'.join(map(str, path + (key,)))}]", path)
            return {}
        if not isinstance(value, dict):
            self.fail(f"{key} must be a table", path, key)
        return value

    def get(self, t: dict, key: str, path: tuple, kind, required=True, default=None):
        if key not in t:
            if required:
                self.fail(f"missing key '{key}'", path)
            return default
        value = t[key]
        if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
            self.fail(f"'{key}' must be an integer", path, key)
        if kind is str and not isinstance(value, str):
            self.fail(f"'{key}' must be a string", path, key)
        if kind is list and not isinstance(value, list):
            self.fail(f"'{key}' must be an array", path, key)
        return value

    def cycles(self, text, degree, path, key):
        if not isinstance(text, str):
            self.fail(f"'{key}' entries must be cycle-notation strings", path, key)
        try:
            return parse_cycles(text, degree)
        except CycleParseError as exc:
            self.fail(str(exc), path, key)

    # -- sections -----------------------------------------------------------

    def group_spec(self, t: dict, path: tuple, allow_product=True):
        kind = self.get(t, "kind", path, str)
        if kind in ("symmetric", "alternating"):
            n = self.get(t, "n", path, int)
            if n < 1:
                self.fail("n must be positive", path, "n")
            return Symmetric(n) if kind == "symmetric" else Alternating(n)
        if kind == "explicit":
            degree = self.get(t, "degree", path, int)
            if degree < 1:
                self.fail("degree must be positive", path, "degree")
            gens = self.get(t, "generators", path, list)
            perms = tuple(Permutation(self.cycles(g, degree, path, "generators")) for g in gens)
            return Explicit(degree, perms)
        if kind == "product" and allow_product:
            factors = self.get(t, "factors", path, list)
            if not factors:
                self.fail("a product needs at least one factor", path, "factors")
            return Product(tuple(
                self.group_spec(f, path + ("factors", i), allow_product=False) for i, f in enumerate(factors)
            ))
        self.fail(f"unknown group kind {kind!r}", path, "kind")

    def subgroup_of(self, G, t: dict, path: tuple):
        kind = self.get(t, "kind", path, str)
        if kind == "point_stabilizer":
            if G.is_product:
                points = self.get(t, "points", path, list, required=False)
                if points is not None and (
                    len(points) != len(G.factors) or not all(isinstance(p, int) for p in points)
                ):
                    self.fail(f"'points' needs {len(G.factors)} integers", path, "points")
                points = points or [None] * len(G.factors)
                for f, p in zip(G.factors, points):
                    if p is not None and not 1 <= p <= f.degree:
                        self.fail(f"point {p} out of range 1..{f.degree}", path, "points")
                return point_stabilizer(G, points)
            point = self.get(t, "point", path, int, required=False)
            if point is not None and not 1 <= point <= G.degree:
                self.fail(f"point {point} out of range 1..{G.degree}", path, "point")
            return point_stabilizer(G, point)
        if kind == "explicit":
            gens = self.get(t, "generators", path, list)
            images = [self.cycles(g, G.degree, path, "generators") for g in gens]
            for g in images:
                if g not in G:
                    self.fail(f"generator {Permutation(g)} is not in {G.name}", path, "generators")
            return subgroup(G, images)
        self.fail(f"unknown subgroup kind {kind!r}", path, "kind")

    def rep(self, G, H, t: dict, path: tuple):
        kind = self.get(t, "kind", path, str)
        if kind == "standard":
            if not isinstance(G.spec, Symmetric):
                self.fail(f"'standard' needs a symmetric group, not {G.name}", path, "kind")
            return StandardOfSymmetric(G)
        if kind == "perm_minus_trivial":
            if "subgroup" in t:
                return PermMinusTrivial(self.subgroup_of(G, self.table(t, "subgroup", path), path + ("subgroup",)))
            return PermMinusTrivial(H)
        if kind == "class_function":
            values = self.get(t, "values", path, list)
            try:
                vals = tuple(Fraction(v) for v in values)
            except (TypeError, ValueError, ZeroDivisionError):
                self.fail("class function values must be integers or 'a/b' strings", path, "values")
            if len(vals) != G.class_count:
                self.fail(f"{G.name} has {G.class_count} classes, got {len(vals)} values", path, "values")
            return ExplicitClassFunction(G, vals)
        if kind == "outer_tensor":
            if not G.is_product:
                self.fail("'outer_tensor' needs a product group", path, "kind")
            pos = self.get(t, "position", path, int)
            if not 1 <= pos <= len(G.factors):
                self.fail(f"position must be in 1..{len(G.factors)}", path, "position")
            factor = G.factors[pos - 1]
            factor_h = H.factors[pos - 1] if H.is_product else point_stabilizer(factor)
            inner = self.rep(factor, factor_h, self.table(t, "inner", path), path + ("inner",))
            return OuterTensor.at(G, pos - 1, inner)
        self.fail(f"unknown representation kind {kind!r}", path, "kind")

    def signature(self, G, t: dict, path: tuple):
        genus = self.get(t, "genus", path, int, required=False, default=0)
        if genus < 0:
            self.fail("genus must be non-negative", path, "genus")
        branches = []
        for i, b in enumerate(self.get(t, "branch", path, list, required=False, default=[])):
            bpath = path + ("branch", i)
            g = Permutation(self.cycles(self.get(b, "element", bpath, str), G.degree, bpath, "element"))
            count = self.get(b, "count", bpath, int)
            if count < 1:
                self.fail("branch count must be positive", bpath, "count")
            branches.append(Branch(g, count))
            try:
                validate_signature(G, GeometricSignature(genus, tuple(branches)))
            except InvalidInput as exc:
                self.fail(str(exc), bpath, "element")
        return GeometricSignature(genus, tuple(branches))

    def build(self) -> PresentationInput:
        doc = self.doc
        gpath = ("group",)
        G = generate_group(self.group_spec(self.table(doc, "group", ()), gpath), self.bound)
        H = self.subgroup_of(G, self.table(doc, "subgroup", ()), ("subgroup",))
        reps_raw = doc.get("representation")
        if not isinstance(reps_raw, list) or not reps_raw:
            self.fail("at least one [[representation]] is required", ())
        reps = tuple(self.rep(G, H, r, ("representation", i)) for i, r in enumerate(reps_raw))
        sig = self.signature(G, self.table(doc, "signature", (), required=False), ("signature",))
        try:
            return PresentationInput(G, H, reps, sig)
        except InvalidInput as exc:
            self.fail(str(exc), ("signature",))


def parse_scenario(text: str, source: str = "<scenario>", enumeration_bound: int = DEFAULT_ENUMERATION_BOUND) -> Scenario:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"syntax error: {exc}", getattr(exc, "lineno", None), source) from exc
    inp = _Builder(doc, _Locator(text), source, enumeration_bound).build()
    return Scenario(inp, doc, source)


def load_scenario(path, enumeration_bound: int = DEFAULT_ENUMERATION_BOUND) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_scenario(text, str(path), enumeration_bound)


# ---------------------------------------------------------------------------
# emitting


def _inner_rep(family: Family) -> dict:
    return {"kind": "perm_minus_trivial"} if family.alternating else {"kind": "standard"}


def family_document(spec: FamilySpec) -> dict:
    """The scenario document of a family input, equal to what the builders produce."""
    fams = spec.factor_families()
    n = spec.n

    def group(f):
        return {"kind": "alternating" if f.alternating else "symmetric", "n": n}

    if spec.m == 1:
        f = fams[0]
        return {
            "group": group(f),
            "subgroup": {"kind": "point_stabilizer", "point": n},
            "representation": [_inner_rep(f)],
            "signature": {"genus": 0, "branch": [{"element": f.inertia, "count": spec.branch_counts()[0]}]},
        }
    branches = []
    offset = 0
    for f, s in zip(fams, spec.branch_counts()):
        shifted = Permutation(parse_cycles(f.inertia, n))
        element = str(Permutation(tuple(range(offset)) + tuple(x + offset for x in shifted.images)
                                  + tuple(range(offset + n, n * spec.m))))
        branches.append({"element": element, "count": s})
        offset += n
    return {
        "group": {"kind": "product", "factors": [group(f) for f in fams]},
        "subgroup": {"kind": "point_stabilizer", "points": [n] * spec.m},
        "representation": [
            {"kind": "outer_tensor", "position": i + 1, "inner": _inner_rep(f)} for i, f in enumerate(fams)
        ],
        "signature": {"genus": 0, "branch": branches},
    }


def emit_scenario(document: dict) -> str:
    return tomlkit.dumps(document)
