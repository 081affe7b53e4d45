"""Finite permutation groups small enough to enumerate, and direct products of them.

Permutations are image arrays.  Externally points are 1-based (cycle notation),
internally 0-based tuples.  Products act left to right on points: ``p * q``
applies ``p`` first, then ``q``, so ``(p * q)[i] == q[p[i]]``.

Large groups are handled only through a direct-product structure: every
operation that would need the full element list of a product group is
assembled from the factors instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence, Union

DEFAULT_ENUMERATION_BOUND = 200_000

Images = tuple  # tuple[int, ...], 0-based


class GroupTooLarge(RuntimeError):
    """The group would have to be enumerated but exceeds the enumeration bound."""


class StructureError(ValueError):
    """A product group was combined with a subgroup that has no compatible product structure."""


class CycleParseError(ValueError):
    """Malformed cycle notation; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class NotInGroup(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw tuple arithmetic (hot loops use these directly)


def _mul(a: Images, b: Images) -> Images:
    return tuple(map(b.__getitem__, a))


def _inv(a: Images) -> Images:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _moved(a: Images) -> tuple:
    return tuple(i for i, j in enumerate(a) if i != j)


def _preference_key(a: Images):
    """Smallest support first, then the moved points, then the image array."""
    moved = _moved(a)
    return (len(moved), moved, a)


def _closure(generators: Sequence[Images], degree: int, bound: int) -> list:
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = tuple(map(s.__getitem__, x))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise GroupTooLarge(
                            f"group too large for explicit enumeration (more than {bound} elements)"
                        )
        frontier = nxt
    return sorted(seen)


def _parity(a: Images) -> int:
    seen = [False] * len(a)
    transpositions = 0
    for i in range(len(a)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        transpositions += length - 1
    return transpositions % 2


# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{1..degree}`` stored as 0-based images."""

    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> Permutation:
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Permutation:
        return cls(parse_cycles(text, degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def __pow__(self, k: int) -> Permutation:
        result = tuple(range(self.degree))
        base = self.images if k >= 0 else _inv(self.images)
        for _ in range(abs(k)):
            result = _mul(result, base)
        return Permutation(result)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def inverse(self) -> Permutation:
        return Permutation(_inv(self.images))

    def cycles(self) -> list:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle, j = [], i
            while j not in seen:
                seen.add(j)
                cycle.append(j + 1)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def sign(self) -> int:
        return -1 if _parity(self.images) else 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def one_based(self) -> list:
        return [i + 1 for i in self.images]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def parse_cycles(text: str, degree: int | None = None) -> Images:
    """Parse cycle notation such as ``"(1 2)(3 4)"`` into 0-based images.

    Cycles are composed left to right.  ``"()"`` is the identity.  If
    ``degree`` is omitted the largest mentioned point is used.
    """
    cycles = []
    i, n = 0, len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    i = skip_ws(i)
    if i == n:
        raise CycleParseError("empty permutation, expected '('", text, i)
    while i < n:
        if text[i] != "(":
            raise CycleParseError(f"expected '(' but found {text[i]!r}", text, i)
        i += 1
        points: list[int] = []
        while True:
            i = skip_ws(i)
            if i == n:
                raise CycleParseError("unterminated cycle, expected ')'", text, i)
            if text[i] == ")":
                i += 1
                break
            if not text[i].isdigit():
                raise CycleParseError(f"unexpected character {text[i]!r}", text, i)
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and not (text[i].isspace() or text[i] == ")"):
                raise CycleParseError(f"unexpected character {text[i]!r}", text, i)
            point = int(text[start:i])
            if point < 1:
                raise CycleParseError("points are 1-based", text, start)
            if degree is not None and point > degree:
                raise CycleParseError(f"point {point} exceeds degree {degree}", text, start)
            if point in points:
                raise CycleParseError(f"point {point} repeated within a cycle", text, start)
            points.append(point)
        cycles.append(points)
        i = skip_ws(i)

    if degree is None:
        degree = max((p for c in cycles for p in c), default=1)
    result = tuple(range(degree))
    for c in cycles:
        if len(c) < 2:
            continue
        step = list(range(degree))
        for a, b in zip(c, c[1:] + c[:1]):
            step[a - 1] = b - 1
        result = _mul(result, tuple(step))
    return result


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class Explicit:
    degree: int
    generators: tuple  # of Permutation


@dataclass(frozen=True)
class Product:
    factors: tuple


GroupSpec = Union[Symmetric, Alternating, Explicit, Product]


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int


class PermGroup:
    """A permutation group, either plain or a direct product on disjoint point blocks.

    Plain groups are enumerated lazily (and at most ``enumeration_bound``
    elements).  Conjugacy classes are listed in canonical order: sorted by the
    lexicographically smallest image array they contain, so the identity
    class comes first.  For products the classes are the Cartesian product of
    the factor classes in the same order, with the first factor most
    significant.
    """

    def __init__(
        self,
        spec: GroupSpec,
        degree: int,
        generators: Sequence[Images],
        *,
        order: int | None = None,
        factors: Sequence[PermGroup] | None = None,
        enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
    ):
        self.spec = spec
        self.degree = degree
        self.generators = tuple(generators)
        self.factors = tuple(factors) if factors is not None else None
        self.enumeration_bound = enumeration_bound
        self._order = order
        if self.factors is not None:
            offsets, off = [], 0
            for f in self.factors:
                offsets.append(off)
                off += f.degree
            if off != degree:
                raise ValueError("factor degrees do not add up")
            self.offsets = tuple(offsets)

    def __repr__(self) -> str:
        return f"PermGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    @property
    def name(self) -> str:
        s = self.spec
        if isinstance(s, Symmetric):
            return f"S{s.n}"
        if isinstance(s, Alternating):
            return f"A{s.n}"
        if isinstance(s, Product):
            return " x ".join(f.name for f in self.factors)
        return f"<{', '.join(str(Permutation(g)) for g in self.generators)}>"

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    @property
    def identity(self) -> Images:
        return tuple(range(self.degree))

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements())
        return self._order

    @property
    def enumerable(self) -> bool:
        if self._order is not None:
            return self._order <= self.enumeration_bound
        try:
            self.elements()
        except GroupTooLarge:
            return False
        return True

    # -- elements ----------------------------------------------------------

    def elements(self) -> list:
        """All elements as sorted 0-based tuples."""
        if "_elements" not in self.__dict__:
            if self._order is not None and self._order > self.enumeration_bound:
                raise GroupTooLarge(
                    f"group too large for explicit enumeration: {self.name} has order "
                    f"{self._order} > {self.enumeration_bound}"
                )
            if self.is_product:
                elems = [self.join(parts) for parts in product(*(f.elements() for f in self.factors))]
            else:
                elems = _closure(self.generators, self.degree, self.enumeration_bound)
            self.__dict__["_elements"] = elems
        return self.__dict__["_elements"]

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements())

    def __contains__(self, element) -> bool:
        t = element.images if isinstance(element, Permutation) else tuple(element)
        if len(t) != self.degree:
            return False
        if self.is_product:
            for f, off in zip(self.factors, self.offsets):
                block = t[off:off + f.degree]
                if any(not off <= x < off + f.degree for x in block):
                    return False
                if tuple(x - off for x in block) not in f:
                    return False
            return True
        if isinstance(self.spec, Symmetric):
            return sorted(t) == list(range(self.degree))
        if isinstance(self.spec, Alternating):
            return sorted(t) == list(range(self.degree)) and _parity(t) == 0
        return t in self._element_set

    def split(self, t: Images) -> tuple:
        """Factor components of a product element, each in local 0-based points."""
        return tuple(
            tuple(x - off for x in t[off:off + f.degree]) for f, off in zip(self.factors, self.offsets)
        )

    def join(self, parts: Sequence[Images]) -> Images:
        return tuple(x + off for p, off in zip(parts, self.offsets) for x in p)

    def embed(self, position: int, t: Images) -> Images:
        """The element acting as ``t`` on block ``position`` and trivially elsewhere."""
        return self.join(
            [t if i == position else f.identity for i, f in enumerate(self.factors)]
        )

    def plain(self) -> PermGroup:
        """The same group with its product structure forgotten."""
        if not self.is_product:
            return self
        gens = tuple(
            self.embed(i, g) for i, f in enumerate(self.factors) for g in f.generators
        )
        return PermGroup(
            Explicit(self.degree, tuple(Permutation(g) for g in gens)),
            self.degree,
            gens,
            enumeration_bound=self.enumeration_bound,
        )

    # -- conjugacy classes -------------------------------------------------

    @cached_property
    def _class_data(self):
        if self.is_product:
            classes = []
            for combo in product(*(f.conjugacy_classes() for f in self.factors)):
                rep = self.join([c.representative.images for c in combo])
                classes.append(ConjugacyClass(Permutation(rep), math.prod(c.size for c in combo)))
            strides, s = [], 1
            for f in reversed(self.factors):
                strides.append(s)
                s *= len(f.conjugacy_classes())
            return classes, None, tuple(reversed(strides))
        index: dict = {}
        classes = []
        gens = [(g, _inv(g)) for g in self.generators]
        for x in self.elements():
            if x in index:
                continue
            k = len(classes)
            index[x] = k
            frontier, size = [x], 1
            while frontier:
                nxt = []
                for y in frontier:
                    for g, gi in gens:
                        z = _mul(_mul(gi, y), g)
                        if z not in index:
                            index[z] = k
                            size += 1
                            nxt.append(z)
                frontier = nxt
            classes.append(ConjugacyClass(Permutation(x), size))
        return classes, index, None

    def conjugacy_classes(self) -> list:
        return self._class_data[0]

    @property
    def class_count(self) -> int:
        return len(self._class_data[0])

    def class_sizes(self) -> list:
        return [c.size for c in self.conjugacy_classes()]

    def class_index(self, element) -> int:
        t = element.images if isinstance(element, Permutation) else element
        classes, index, strides = self._class_data
        if strides is not None:
            return sum(
                f.class_index(p) * s for f, p, s in zip(self.factors, self.split(t), strides)
            )
        try:
            return index[t]
        except KeyError:
            raise NotInGroup(f"{Permutation(t)} is not in {self.name}") from None

    def class_multi_index(self, k: int) -> tuple:
        """Factor class indices of product class ``k``."""
        strides = self._class_data[2]
        return tuple((k // s) % f.class_count for f, s in zip(self.factors, strides))

    def flat_class_index(self, multi: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(multi, self._class_data[2]))


def generate_group(spec: GroupSpec, enumeration_bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Build a group from a specification.

    The order of symmetric, alternating and product groups is known without
    enumeration; explicit groups are closed under composition, which fails
    with :class:`GroupTooLarge` past ``enumeration_bound`` elements.
    """
    if isinstance(spec, Symmetric):
        n = spec.n
        if n < 1:
            raise ValueError("Symmetric(n) needs n >= 1")
        gens = []
        if n >= 2:
            gens.append(parse_cycles("(1 2)", n))
        if n >= 3:
            gens.append(parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n))
        return PermGroup(spec, n, gens, order=math.factorial(n), enumeration_bound=enumeration_bound)
    if isinstance(spec, Alternating):
        n = spec.n
        if n < 3:
            raise ValueError("Alternating(n) needs n >= 3")
        gens = [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
        return PermGroup(spec, n, gens, order=math.factorial(n) // 2, enumeration_bound=enumeration_bound)
    if isinstance(spec, Explicit):
        gens = []
        for g in spec.generators:
            p = g if isinstance(g, Permutation) else Permutation.parse(g, spec.degree)
            if p.degree != spec.degree:
                raise ValueError(f"generator {p} has degree {p.degree}, expected {spec.degree}")
            gens.append(p.images)
        group = PermGroup(
            Explicit(spec.degree, tuple(Permutation(g) for g in gens)),
            spec.degree,
            gens,
            enumeration_bound=enumeration_bound,
        )
        group.elements()
        return group
    if isinstance(spec, Product):
        if not spec.factors:
            raise ValueError("Product needs at least one factor")
        factors = [generate_group(f, enumeration_bound) for f in spec.factors]
        degree = sum(f.degree for f in factors)
        group = PermGroup(
            spec, degree, (), order=math.prod(f.order for f in factors), factors=factors,
            enumeration_bound=enumeration_bound,
        )
        group.generators = tuple(
            group.embed(i, g) for i, f in enumerate(factors) for g in f.generators
        )
        return group
    raise TypeError(f"unknown group spec {spec!r}")


def conjugacy_classes(G: PermGroup) -> list:
    return G.conjugacy_classes()


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of an ambient group, optionally carrying a product structure."""

    def __init__(
        self,
        ambient: PermGroup,
        generators: Sequence[Images],
        order: int | None = None,
        *,
        factors: Sequence[Subgroup] | None = None,
        label: str | None = None,
        elements: list | None = None,
    ):
        self.ambient = ambient
        self.generators = tuple(generators)
        self.factors = tuple(factors) if factors is not None else None
        self.label = label
        for g in self.generators:
            if g not in ambient:
                raise NotInGroup(f"{Permutation(g)} is not in {ambient.name}")
        if elements is not None:
            self.__dict__["_elements"] = elements
            order = len(elements)
        if self.factors is not None:
            order = math.prod(f.order for f in self.factors)
        self._order = order
        if order is not None and ambient.order % order:
            raise ValueError(f"subgroup order {order} does not divide {ambient.order}")

    def __repr__(self) -> str:
        return f"Subgroup({self.label or '?'} <= {self.ambient.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup) or other.ambient != self.ambient:
            return False
        if self.order != other.order:
            return False
        return all(g in other for g in self.generators) and all(g in self for g in other.generators)

    def __hash__(self) -> int:
        return hash((self.ambient, self.order))

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements())
        return self._order

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    def elements(self) -> list:
        if "_elements" not in self.__dict__:
            G = self.ambient
            if self.is_product:
                elems = [G.join(parts) for parts in product(*(f.elements() for f in self.factors))]
            else:
                elems = _closure(self.generators, G.degree, G.enumeration_bound)
            self.__dict__["_elements"] = elems
        return self.__dict__["_elements"]

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements())

    def __contains__(self, element) -> bool:
        t = element.images if isinstance(element, Permutation) else tuple(element)
        if self.is_product:
            if t not in self.ambient:
                return False
            return all(p in f for p, f in zip(self.ambient.split(t), self.factors))
        return t in self._element_set


SubgroupHandle = Subgroup


def subgroup(G: PermGroup, generators: Iterable, label: str | None = None) -> Subgroup:
    """Closure of ``generators`` (Permutations, image tuples or cycle strings) inside G."""
    gens = []
    for g in generators:
        if isinstance(g, str):
            gens.append(parse_cycles(g, G.degree))
        else:
            gens.append(g.images if isinstance(g, Permutation) else tuple(g))
    return Subgroup(G, gens, label=label)


def whole_group(G: PermGroup) -> Subgroup:
    if G.is_product:
        return product_subgroup(G, [whole_group(f) for f in G.factors])
    return Subgroup(G, G.generators, G.order, label=G.name)


def product_subgroup(G: PermGroup, factor_subgroups: Sequence[Subgroup]) -> Subgroup:
    if not G.is_product or len(factor_subgroups) != len(G.factors):
        raise StructureError("product subgroup needs one factor subgroup per factor of a product group")
    for f, s in zip(G.factors, factor_subgroups):
        if s.ambient != f:
            raise StructureError(f"{s!r} is not a subgroup of factor {f.name}")
    gens = [G.embed(i, g) for i, s in enumerate(factor_subgroups) for g in s.generators]
    label = " x ".join(s.label or "?" for s in factor_subgroups)
    return Subgroup(G, gens, factors=factor_subgroups, label=label)


def point_stabilizer(G: PermGroup, point=None) -> Subgroup:
    """Stabilizer of a 1-based point (default: the last point).

    For a product group ``point`` may be a sequence with one local point per
    factor; the result is the product of the factor stabilizers.
    """
    if G.is_product:
        points = point if point is not None else [None] * len(G.factors)
        if isinstance(points, int) or len(points) != len(G.factors):
            raise StructureError("a product group needs one stabilized point per factor")
        return product_subgroup(G, [point_stabilizer(f, p) for f, p in zip(G.factors, points)])
    n = G.degree
    p = n if point is None else point
    if not 1 <= p <= n:
        raise ValueError(f"point {p} out of range 1..{n}")
    rest = [i for i in range(1, n + 1) if i != p]
    label = f"Stab({p})"
    if isinstance(G.spec, Symmetric):
        gens = []
        if len(rest) >= 2:
            gens.append(parse_cycles(f"({rest[0]} {rest[1]})", n))
        if len(rest) >= 3:
            gens.append(parse_cycles("(" + " ".join(map(str, rest)) + ")", n))
        return Subgroup(G, gens, math.factorial(n - 1), label=label)
    if isinstance(G.spec, Alternating):
        gens = [parse_cycles(f"({rest[0]} {rest[1]} {k})", n) for k in rest[2:]]
        order = math.factorial(n - 1) // 2 if n - 1 >= 2 else 1
        return Subgroup(G, gens, order, label=label)
    elems = [g for g in G.elements() if g[p - 1] == p - 1]
    return Subgroup(G, _generating_set(elems, n), label=label, elements=elems)


def _generating_set(elements: list, degree: int) -> list:
    gens: list = []
    span = {tuple(range(degree))}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(_closure(gens, degree, len(elements)))
    return gens


def cyclic_subgroup(G: PermGroup, word) -> Subgroup:
    """The cyclic subgroup generated by one element, given in cycle notation or as a Permutation."""
    g = word if isinstance(word, Permutation) else Permutation.parse(word, G.degree)
    if g.degree != G.degree:
        raise ValueError(f"{g} has degree {g.degree}, group has degree {G.degree}")
    if g not in G:
        raise NotInGroup(f"{g} is not in {G.name}")
    powers = []
    x = G.identity
    while True:
        powers.append(x)
        x = _mul(x, g.images)
        if x == G.identity:
            break
    return Subgroup(G, [g.images], label=f"<{g}>", elements=sorted(powers))


# ---------------------------------------------------------------------------
# double cosets


@dataclass
class DoubleCosets:
    """``H \\ G / K``: one representative per double coset (lexicographically
    smallest element, identity first) and, for each, the number of right
    ``H``-cosets ``Hx`` it contains."""

    reps: list
    sizes: list

    def __len__(self) -> int:
        return len(self.reps)


def _plain_double_cosets(G: PermGroup, H: Subgroup, K: Subgroup):
    """Assign each element of G to its double coset H g K.  Returns (reps, members, index)."""
    index: dict = {}
    reps, members = [], []
    hg = H.generators
    kg = K.generators
    for g in G.elements():
        if g in index:
            continue
        k = len(reps)
        index[g] = k
        block = [g]
        frontier = [g]
        while frontier:
            nxt = []
            for x in frontier:
                for h in hg:
                    y = _mul(h, x)
                    if y not in index:
                        index[y] = k
                        block.append(y)
                        nxt.append(y)
                for h in kg:
                    y = _mul(x, h)
                    if y not in index:
                        index[y] = k
                        block.append(y)
                        nxt.append(y)
            frontier = nxt
        reps.append(g)
        members.append(block)
    return reps, members, index


def double_cosets(G: PermGroup, H: Subgroup, K: Subgroup) -> DoubleCosets:
    """Double cosets ``H g K`` of G.

    Product groups with product-structured H and K are decomposed factor by
    factor; any other combination needs G to be enumerable.
    """
    if H.ambient != G or K.ambient != G:
        raise ValueError("subgroups must belong to G")
    if G.is_product and H.is_product and K.is_product:
        parts = [double_cosets(f, h, k) for f, h, k in zip(G.factors, H.factors, K.factors)]
        reps, sizes = [], []
        for combo in product(*(range(len(p)) for p in parts)):
            reps.append(Permutation(G.join([p.reps[i].images for p, i in zip(parts, combo)])))
            sizes.append(math.prod(p.sizes[i] for p, i in zip(parts, combo)))
        return DoubleCosets(reps, sizes)
    if G.is_product and not G.enumerable:
        raise StructureError(
            f"{G.name} is too large to enumerate and the subgroups are not product-structured"
        )
    reps, members, _ = _plain_double_cosets(G, H, K)
    return DoubleCosets([Permutation(r) for r in reps], [len(m) // H.order for m in members])


class DoubleCosetDecomposition:
    """``H \\ G / H`` with two-sided coset representatives.

    ``two_sided_reps[i]`` lists ``n_i`` elements of the i-th double coset that
    lie in pairwise distinct left cosets ``xH`` and pairwise distinct right
    cosets ``Hx``; together they cover every left and every right coset of
    that double coset exactly once.  ``reps[i]`` is ``two_sided_reps[i][0]``
    and ``reps[0]`` is the identity.

    Concatenating the two-sided representatives gives a left transversal of H,
    which indexes the coset space G/H throughout.
    """

    def __init__(self, group, subgroup, reps, sizes, two_sided_reps, double_coset_of, left_coset_of):
        self.group = group
        self.subgroup = subgroup
        self.reps = reps
        self.sizes = sizes
        self.two_sided_reps = two_sided_reps
        self._double_coset_of = double_coset_of
        self._left_coset_of = left_coset_of

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def index(self) -> int:
        return sum(self.sizes)

    def transversal(self) -> list:
        return [x for block in self.two_sided_reps for x in block]

    def double_coset_of(self, element) -> int:
        t = element.images if isinstance(element, Permutation) else element
        return self._double_coset_of(t)

    def left_coset_of(self, element) -> int:
        """Position in :meth:`transversal` of the representative of ``element * H``."""
        t = element.images if isinstance(element, Permutation) else element
        return self._left_coset_of(t)


def _perfect_matching(adjacency: list, n_right: int) -> list:
    """Kuhn's augmenting paths; ``adjacency[u]`` lists right vertices in preference order."""
    match_right = [-1] * n_right

    def augment(u, seen):
        for v in adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(len(adjacency)):
        if not augment(u, set()):
            raise RuntimeError("no perfect matching between left and right cosets")
    match_left = [-1] * len(adjacency)
    for v, u in enumerate(match_right):
        if u >= 0:
            match_left[u] = v
    return match_left


def _plain_decomposition(G: PermGroup, H: Subgroup) -> DoubleCosetDecomposition:
    h_elems = H.elements()
    left: dict = {}
    right: dict = {}
    n_left = n_right = 0
    for g in G.elements():
        if g not in left:
            for h in h_elems:
                left[_mul(g, h)] = n_left
            n_left += 1
        if g not in right:
            for h in h_elems:
                right[_mul(h, g)] = n_right
            n_right += 1

    reps_raw, members, dc_index = _plain_double_cosets(G, H, H)
    transversal_pos: dict = {}
    two_sided, reps, sizes = [], [], []
    for block in members:
        best: dict = {}
        for x in block:
            edge = (left[x], right[x])
            key = _preference_key(x)
            if edge not in best or key < best[edge][0]:
                best[edge] = (key, x)
        by_left: dict = {}
        for (l, r), (key, x) in best.items():
            by_left.setdefault(l, []).append((key, r, x))
        lefts = sorted(by_left, key=lambda l: min(by_left[l])[0])
        rights = sorted({r for (_, r) in best})
        rpos = {r: i for i, r in enumerate(rights)}
        adjacency = [[rpos[r] for _, r, _ in sorted(by_left[l])] for l in lefts]
        if len(lefts) != len(rights):
            raise RuntimeError("double coset has unequal numbers of left and right cosets")
        matched = _perfect_matching(adjacency, len(rights))
        chosen = []
        for u, l in enumerate(lefts):
            r = rights[matched[u]]
            chosen.append((best[(l, r)][0], l, best[(l, r)][1]))
        chosen.sort()
        start = sum(sizes)
        for offset, (_, l, _) in enumerate(chosen):
            transversal_pos[l] = start + offset
        elems = [Permutation(x) for _, _, x in chosen]
        two_sided.append(elems)
        reps.append(elems[0])
        sizes.append(len(elems))

    return DoubleCosetDecomposition(
        G, H, reps, sizes, two_sided,
        dc_index.__getitem__,
        lambda t: transversal_pos[left[t]],
    )


def _product_decomposition(G: PermGroup, H: Subgroup) -> DoubleCosetDecomposition:
    parts = [simultaneous_coset_reps(f, h) for f, h in zip(G.factors, H.factors)]
    combos = list(product(*(range(len(p)) for p in parts)))
    flat = {c: i for i, c in enumerate(combos)}
    reps, sizes, two_sided = [], [], []
    factor_trans_offset = []
    for p in parts:
        offs, o = [], 0
        for s in p.sizes:
            offs.append(o)
            o += s
        factor_trans_offset.append(offs)
    transversal_pos: dict = {}
    pos = 0
    for combo in combos:
        blocks = [p.two_sided_reps[i] for p, i in zip(parts, combo)]
        elems = []
        for picks in product(*(range(len(b)) for b in blocks)):
            elems.append(Permutation(G.join([b[j].images for b, j in zip(blocks, picks)])))
            local = tuple(factor_trans_offset[f][combo[f]] + j for f, j in enumerate(picks))
            transversal_pos[local] = pos
            pos += 1
        two_sided.append(elems)
        reps.append(elems[0])
        sizes.append(len(elems))

    def dc_of(t):
        return flat[tuple(p.double_coset_of(x) for p, x in zip(parts, G.split(t)))]

    def left_of(t):
        return transversal_pos[tuple(p.left_coset_of(x) for p, x in zip(parts, G.split(t)))]

    return DoubleCosetDecomposition(G, H, reps, sizes, two_sided, dc_of, left_of)


def simultaneous_coset_reps(G: PermGroup, H: Subgroup) -> DoubleCosetDecomposition:
    """Decompose G into double cosets ``HgH`` with two-sided representatives.

    Inside each double coset the left and right cosets form a bipartite
    graph (joined when they intersect) which is regular, so it has a perfect
    matching; each matched pair contributes one element of its intersection.
    Candidates with the smallest support are preferred, which for
    ``S_n`` over a point stabilizer yields the transpositions ``(i n)``.
    """
    if H.ambient != G:
        raise ValueError("H must be a subgroup of G")
    if G.is_product and H.is_product:
        return _product_decomposition(G, H)
    if G.is_product and not G.enumerable:
        raise StructureError(f"{G.name} is too large to enumerate and H is not product-structured")
    return _plain_decomposition(G, H)


def coset_action(decomposition: DoubleCosetDecomposition, g) -> list:
    """Permutation ``a -> b`` of transversal positions with ``g x_a H = x_b H``."""
    t = g.images if isinstance(g, Permutation) else g
    return [decomposition.left_coset_of(_mul(t, x.images)) for x in decomposition.transversal()]


def minimal_overgroup(H: Subgroup, g: Images) -> Subgroup:
    """``<H, g>`` by closure in the ambient group."""
    return Subgroup(H.ambient, list(H.generators) + [g], label=f"<{H.label}, {Permutation(g)}>")
