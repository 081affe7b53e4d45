"""Exact characters on enumerable and product-structured permutation groups.

Only the characters the construction needs are built in: the standard
character (fixed points minus one), permutation characters of coset
actions, and outer tensor products of these.  Anything else can be supplied
as an explicit list of values in canonical class order.

Sums over a subgroup are reduced to a histogram of conjugacy classes.  For
product-structured subgroups the histogram is the product of the factor
histograms, so nothing ever enumerates ``H^m``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence, Union

from .permgrp import Permutation, PermGroup, Subgroup, Symmetric, _mul


class NotACharacter(ValueError):
    """Averaging over a subgroup gave a value that is not a non-negative integer."""


class ClassFunction:
    """A rational-valued function on the conjugacy classes of ``group``."""

    __slots__ = ("group", "values")

    def __init__(self, group: PermGroup, values: Sequence):
        values = tuple(Fraction(v) for v in values)
        if len(values) != group.class_count:
            raise ValueError(
                f"{group.name} has {group.class_count} conjugacy classes, got {len(values)} values"
            )
        self.group = group
        self.values = values

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.name}, {[str(v) for v in self.values]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and self.group == other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.group, self.values))

    def _check(self, other: ClassFunction):
        if other.group != self.group:
            raise ValueError(f"class functions live on different groups: {self.group.name}, {other.group.name}")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other) -> ClassFunction:
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def __call__(self, element) -> Fraction:
        return self.values[self.group.class_index(element)]

    @property
    def degree(self) -> Fraction:
        return self.values[0]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


def trivial_character(G: PermGroup) -> ClassFunction:
    return ClassFunction(G, [1] * G.class_count)


def inner_product(chi1: ClassFunction, chi2: ClassFunction) -> Fraction:
    """``(1/|G|) sum_g chi1(g) chi2(g)``; all characters here are rational, hence real."""
    chi1._check(chi2)
    G = chi1.group
    total = sum(s * a * b for s, a, b in zip(G.class_sizes(), chi1.values, chi2.values))
    return Fraction(total, G.order)


# ---------------------------------------------------------------------------
# class histograms


def class_histogram(S: Subgroup, shift=None) -> Counter:
    """Counter of class indices of ``s * shift`` over ``s`` in S (``shift`` defaults to 1)."""
    G = S.ambient
    t = None if shift is None else (shift.images if isinstance(shift, Permutation) else tuple(shift))
    if S.is_product and G.is_product:
        parts = G.split(t) if t is not None else [None] * len(G.factors)
        factor_hists = [class_histogram(f, p) for f, p in zip(S.factors, parts)]
        hist: Counter = Counter()
        for combo in product(*(h.items() for h in factor_hists)):
            count = 1
            for _, c in combo:
                count *= c
            hist[G.flat_class_index([k for k, _ in combo])] += count
        return hist
    if t is None:
        return Counter(G.class_index(s) for s in S.elements())
    return Counter(G.class_index(_mul(s, t)) for s in S.elements())


def subgroup_sum(chi: ClassFunction, S: Subgroup, shift=None) -> Fraction:
    """``sum_{s in S} chi(s * shift)``."""
    if S.ambient != chi.group:
        raise ValueError("subgroup and class function live on different groups")
    return sum((c * chi.values[k] for k, c in class_histogram(S, shift).items()), Fraction(0))


def fixed_space_dim(chi: ClassFunction, S: Subgroup) -> int:
    """Dimension of the S-fixed subspace, ``(1/|S|) sum_{s in S} chi(s)``."""
    value = subgroup_sum(chi, S) / S.order
    if value.denominator != 1 or value < 0:
        raise NotACharacter(f"not a character on this subgroup: average {value} over {S!r}")
    return int(value)


def induced_trivial_character(H: Subgroup, G: PermGroup | None = None) -> ClassFunction:
    """Permutation character of G on G/H: the number of cosets fixed by each class."""
    G = H.ambient if G is None else G
    if H.ambient != G:
        raise ValueError("H is not a subgroup of G")
    hist = class_histogram(H)
    sizes = G.class_sizes()
    values = []
    for k, size in enumerate(sizes):
        v = Fraction(G.order * hist.get(k, 0), H.order * size)
        if v.denominator != 1:
            raise ArithmeticError("induced character is not integral")
        values.append(v)
    return ClassFunction(G, values)


def double_coset_count(H: Subgroup, K: Subgroup) -> int:
    """``|H \\ G / K| = <rho_H, rho_K>``, computed as the K-average of ``rho_H``."""
    return fixed_space_dim(induced_trivial_character(H), K)


# ---------------------------------------------------------------------------
# representation specs


@dataclass(frozen=True)
class StandardOfSymmetric:
    """The (n-1)-dimensional standard representation of ``S_n``."""

    group: PermGroup


@dataclass(frozen=True)
class PermMinusTrivial:
    """``rho_H^G - chi_0``; for a point stabilizer of ``A_n`` this is its standard representation."""

    subgroup: Subgroup


@dataclass(frozen=True)
class OuterTensor:
    """Outer tensor product on a product group; ``None`` components are trivial."""

    group: PermGroup
    components: tuple

    @classmethod
    def at(cls, group: PermGroup, position: int, inner) -> OuterTensor:
        """``chi_0 x ... x inner x ... x chi_0`` with ``inner`` in slot ``position`` (0-based)."""
        if not group.is_product:
            raise ValueError("outer tensor products need a product group")
        comps = [None] * len(group.factors)
        comps[position] = inner
        return cls(group, tuple(comps))

    @property
    def position(self) -> int | None:
        """The single nontrivial slot, if there is exactly one."""
        slots = [i for i, c in enumerate(self.components) if c is not None]
        return slots[0] if len(slots) == 1 else None


@dataclass(frozen=True)
class ExplicitClassFunction:
    group: PermGroup
    values: tuple


RepSpec = Union[StandardOfSymmetric, PermMinusTrivial, OuterTensor, ExplicitClassFunction]


def rep_group(spec: RepSpec) -> PermGroup:
    if isinstance(spec, PermMinusTrivial):
        return spec.subgroup.ambient
    return spec.group


@lru_cache(maxsize=256)
def character_of(spec: RepSpec) -> ClassFunction:
    if isinstance(spec, StandardOfSymmetric):
        G = spec.group
        if not isinstance(G.spec, Symmetric):
            raise ValueError(f"StandardOfSymmetric needs a symmetric group, got {G.name}")
        return ClassFunction(G, [c.representative.fixed_points() - 1 for c in G.conjugacy_classes()])
    if isinstance(spec, PermMinusTrivial):
        rho = induced_trivial_character(spec.subgroup)
        return rho - trivial_character(rho.group)
    if isinstance(spec, OuterTensor):
        G = spec.group
        if not G.is_product or len(spec.components) != len(G.factors):
            raise ValueError("outer tensor components must match the factors of a product group")
        factor_values = []
        for f, comp in zip(G.factors, spec.components):
            if comp is None:
                factor_values.append([Fraction(1)] * f.class_count)
                continue
            inner = character_of(comp)
            if inner.group != f:
                raise ValueError(f"component lives on {inner.group.name}, expected {f.name}")
            factor_values.append(inner.values)
        values = []
        for combo in product(*factor_values):
            v = Fraction(1)
            for x in combo:
                v *= x
            values.append(v)
        return ClassFunction(G, values)
    if isinstance(spec, ExplicitClassFunction):
        return ClassFunction(spec.group, spec.values)
    raise TypeError(f"unknown representation spec {spec!r}")


@dataclass(frozen=True)
class IrreducibilityVerdict:
    norm: Fraction
    integral: bool
    trivial: bool

    @property
    def valid(self) -> bool:
        """Absolutely irreducible with rational-integer values."""
        return self.norm == 1 and self.integral

    def __bool__(self) -> bool:
        return self.valid


def is_valid_irreducible(chi: ClassFunction) -> IrreducibilityVerdict:
    return IrreducibilityVerdict(
        norm=inner_product(chi, chi),
        integral=chi.is_integral() and chi.degree > 0,
        trivial=chi == trivial_character(chi.group),
    )


def standard_matrix(g: Permutation) -> list:
    """Integer matrix of the standard representation of ``S_n`` at ``g``.

    Basis ``e_1..e_{n-1}`` of the sum-zero hyperplane with
    ``e_n = -(e_1 + ... + e_{n-1})``; ``g`` sends ``e_i`` to ``e_{g(i)}``.
    Column ``j`` is the image of ``e_j``.  With the left-to-right product,
    ``standard_matrix(p * q) == standard_matrix(q) @ standard_matrix(p)``.
    """
    n = g.degree
    m = [[0] * (n - 1) for _ in range(n - 1)]
    for j in range(n - 1):
        target = g.images[j]
        if target == n - 1:
            for i in range(n - 1):
                m[i][j] = -1
        else:
            m[target][j] = 1
    return m
