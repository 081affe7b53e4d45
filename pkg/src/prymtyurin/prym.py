"""Prym-Tyurin presentations from group data.

Given ``(G, H, V_1..V_r, signature)`` this computes the correspondence
coefficients on the double cosets of H, the exponent, the criterion
residual, the Prym dimension and the genera, and realizes the
correspondence as an integer Hecke operator on ``G/H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .permgrp import (
    DoubleCosetDecomposition,
    Permutation,
    PermGroup,
    Subgroup,
    _inv,
    _mul,
    coset_action,
    cyclic_subgroup,
    minimal_overgroup,
    simultaneous_coset_reps,
)
from .reptheory import (
    ClassFunction,
    OuterTensor,
    character_of,
    fixed_space_dim,
    induced_trivial_character,
    is_valid_irreducible,
    rep_group,
    subgroup_sum,
)

DEFAULT_MATRIX_BOUND = 4096


class EngineError(Exception):
    """Base class for errors that make a presentation impossible to evaluate."""


class SignatureError(EngineError):
    """The signature is inconsistent (non-integral or negative genus or dimension)."""


class DegenerateCorrespondence(EngineError):
    pass


class NonIntegralExponent(EngineError):
    pass


class CriterionNotApplicable(EngineError):
    pass


class IndexTooLarge(EngineError):
    pass


class InvalidInput(EngineError):
    pass


# ---------------------------------------------------------------------------
# inputs


@dataclass(frozen=True)
class Branch:
    generator: Permutation
    count: int


@dataclass(frozen=True)
class GeometricSignature:
    """``[quotient_genus; (<g_1>, s_1), ..., (<g_t>, s_t)]``."""

    quotient_genus: int = 0
    branches: tuple = ()

    @classmethod
    def of(cls, G: PermGroup, entries, quotient_genus: int = 0) -> GeometricSignature:
        """Build from ``(cycle notation or Permutation, count)`` pairs."""
        branches = []
        for word, count in entries:
            g = word if isinstance(word, Permutation) else Permutation.parse(word, G.degree)
            branches.append(Branch(g, count))
        return cls(quotient_genus, tuple(branches))

    @property
    def branch_point_count(self) -> int:
        return sum(b.count for b in self.branches)


def validate_signature(G: PermGroup, signature: GeometricSignature) -> None:
    if signature.quotient_genus < 0:
        raise InvalidInput("quotient genus must be non-negative")
    seen = []
    for b in signature.branches:
        if b.count < 1:
            raise InvalidInput(f"branch count for {b.generator} must be positive")
        if b.generator.is_identity():
            raise InvalidInput("branch generators must be nontrivial")
        if b.generator not in G:
            raise InvalidInput(f"branch generator {b.generator} is not in {G.name}")
        for other in seen:
            if _cyclic_conjugate(G, b.generator, other):
                raise InvalidInput(
                    f"branch entries {other} and {b.generator} generate conjugate cyclic subgroups"
                )
        seen.append(b.generator)


def _cyclic_conjugate(G: PermGroup, a: Permutation, b: Permutation) -> bool:
    n = a.order()
    if n != b.order():
        return False
    target = G.class_index(b)
    return any(math.gcd(k, n) == 1 and G.class_index(a ** k) == target for k in range(1, n + 1))


@dataclass(eq=False)
class PresentationInput:
    """A candidate presentation ``(G, H, {V_k}, signature)``."""

    group: PermGroup
    subgroup: Subgroup
    reps: tuple
    signature: GeometricSignature = GeometricSignature()

    def __post_init__(self):
        self.reps = tuple(self.reps)
        if self.subgroup.ambient != self.group:
            raise InvalidInput("H must be a subgroup of G")
        if not self.reps:
            raise InvalidInput("at least one representation is required")
        for r in self.reps:
            if rep_group(r) != self.group:
                raise InvalidInput(f"representation {r!r} is not defined on {self.group.name}")
        validate_signature(self.group, self.signature)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PresentationInput)
            and self.group == other.group
            and self.subgroup == other.subgroup
            and self.characters == other.characters
            and self.signature == other.signature
        )

    @cached_property
    def characters(self) -> tuple:
        return tuple(character_of(r) for r in self.reps)

    @cached_property
    def dims(self) -> tuple:
        return tuple(int(c.degree) for c in self.characters)

    @cached_property
    def index(self) -> int:
        return self.group.order // self.subgroup.order

    @cached_property
    def permutation_character(self) -> ClassFunction:
        return induced_trivial_character(self.subgroup)

    @cached_property
    def decomposition(self) -> DoubleCosetDecomposition:
        return simultaneous_coset_reps(self.group, self.subgroup)

    @cached_property
    def branch_data(self) -> tuple:
        """Per branch: (order of G_j, fixed dims of each V_k, |H \\ G / G_j|)."""
        out = []
        for b in self.signature.branches:
            C = cyclic_subgroup(self.group, b.generator)
            fixed = tuple(fixed_space_dim(chi, C) for chi in self.characters)
            out.append((C.order, fixed, fixed_space_dim(self.permutation_character, C)))
        return tuple(out)


def check_reps(inp: PresentationInput) -> list:
    """Problems with the representation list, empty when the hypotheses hold."""
    problems = []
    for k, chi in enumerate(inp.characters, 1):
        verdict = is_valid_irreducible(chi)
        if verdict.trivial:
            problems.append(f"V{k} is trivial")
        elif not verdict.valid:
            problems.append(f"V{k} is not an integral irreducible character (norm {verdict.norm})")
    if len(set(inp.characters)) != len(inp.characters):
        problems.append("representations are not pairwise distinct")
    if len(set(inp.dims)) > 1:
        problems.append(f"representations have different dimensions {inp.dims}")
    return problems


# ---------------------------------------------------------------------------
# condition on fixed spaces


@dataclass
class IsotypicVerdict:
    fixed_dims: tuple
    maximal: bool
    mode: str  # "exhaustive" or "structural"
    witness: str | None = None

    @property
    def holds(self) -> bool:
        return all(d == 1 for d in self.fixed_dims) and self.maximal

    def __bool__(self) -> bool:
        return self.holds


def _structural_slots(inp: PresentationInput):
    """Factor-wise data when every V_k is an outer tensor with one nontrivial slot covering all slots."""
    G, H = inp.group, inp.subgroup
    if not (G.is_product and H.is_product):
        return None
    slots: dict = {}
    for r in inp.reps:
        if not isinstance(r, OuterTensor) or r.position is None:
            return None
        slots.setdefault(r.position, []).append(r.components[r.position])
    if set(slots) != set(range(len(G.factors))):
        return None
    return slots


def _exhaustive_maximality(H: Subgroup, characters, candidates) -> tuple:
    for g in candidates:
        N = minimal_overgroup(H, g)
        if all(fixed_space_dim(chi, N) > 0 for chi in characters):
            return False, str(Permutation(g))
    return True, None


def isotypic_condition(inp: PresentationInput, mode: str | None = None) -> IsotypicVerdict:
    """``dim V_k^H = 1`` for all k, and H maximal with this property.

    Maximality is checked on the overgroups ``<H, g>`` with g running over
    the nontrivial double coset representatives: every strict overgroup
    contains one of them and fixed spaces only shrink as the group grows.
    Product groups too large to enumerate use the factor-wise argument
    instead: a strict overgroup of ``H_1 x ... x H_m`` projects onto a strict
    overgroup of some ``H_i``, where the slot-i representation has no fixed
    vectors.
    """
    G, H = inp.group, inp.subgroup
    fixed = tuple(fixed_space_dim(chi, H) for chi in inp.characters)
    if mode is None:
        mode = "exhaustive" if G.enumerable else "structural"
    if mode == "exhaustive":
        reps = [r.images for r in inp.decomposition.reps[1:]]
        maximal, witness = _exhaustive_maximality(H, inp.characters, reps)
        return IsotypicVerdict(fixed, maximal, "exhaustive", witness)
    if mode != "structural":
        raise ValueError(f"unknown maximality mode {mode!r}")
    slots = _structural_slots(inp)
    if slots is None:
        raise EngineError(
            f"{G.name} is too large to enumerate and the representations are not slot-wise outer tensors"
        )
    for i, inners in slots.items():
        f, h = G.factors[i], H.factors[i]
        chars = [character_of(x) for x in inners]
        dec = simultaneous_coset_reps(f, h)
        ok, witness = _exhaustive_maximality(h, chars, [r.images for r in dec.reps[1:]])
        if not ok:
            return IsotypicVerdict(fixed, False, "structural", f"factor {i + 1}: {witness}")
    return IsotypicVerdict(fixed, True, "structural")


# ---------------------------------------------------------------------------
# correspondence


@dataclass
class CorrespondenceData:
    decomposition: DoubleCosetDecomposition
    coefficients: list
    b: int
    q: int


def coefficient_list(inp: PresentationInput) -> list:
    """``b_i = sum_k sum_{h in H} chi_k(h g_i^{-1})`` for each double coset representative."""
    out = []
    for g in inp.decomposition.reps:
        ginv = _inv(g.images)
        total = sum(subgroup_sum(chi, inp.subgroup, ginv) for chi in inp.characters)
        if total.denominator != 1:
            raise ArithmeticError(f"coefficient at {g} is not an integer: {total}")
        out.append(int(total))
    return out


def correspondence_coefficients(inp: PresentationInput) -> CorrespondenceData:
    coefficients = coefficient_list(inp)
    if len(coefficients) == 1:
        raise DegenerateCorrespondence("degenerate: no nontrivial correspondence (H has a single double coset)")
    b = math.gcd(*(coefficients[0] - c for c in coefficients[1:]))
    if b == 0:
        raise DegenerateCorrespondence("degenerate: all coefficients coincide, so b = 0")
    q, rem = divmod(inp.group.order, b * inp.dims[0])
    if rem:
        raise NonIntegralExponent(
            f"exponent not integral: invalid presentation (|G| = {inp.group.order}, b = {b}, dim V1 = {inp.dims[0]})"
        )
    return CorrespondenceData(inp.decomposition, coefficients, b, q)


def criterion_terms(inp: PresentationInput, q: int) -> list:
    """Per branch ``q sum_k (dim V_k - dim V_k^{G_j}) - ([G:H] - |H\\G/G_j|)``."""
    terms = []
    for _, fixed, dc in inp.branch_data:
        codim = sum(d - f for d, f in zip(inp.dims, fixed))
        terms.append(q * codim - (inp.index - dc))
    return terms


def criterion_residual(inp: PresentationInput, q: int) -> int:
    """Left side of the exponent criterion; zero when it holds."""
    if inp.signature.quotient_genus != 0:
        raise CriterionNotApplicable("criterion stated only for genus-0 quotient")
    return sum(b.count * t for b, t in zip(inp.signature.branches, criterion_terms(inp, q)))


def _half(twice: int, what: str) -> int:
    if twice % 2:
        raise SignatureError(f"inconsistent signature: {what} is not an integer ({twice}/2)")
    return twice // 2


def prym_dimension(inp: PresentationInput) -> int:
    """``sum_k [dim V_k (gamma - 1) + 1/2 sum_j s_j (dim V_k - dim V_k^{G_j})]``.

    Negative for degenerate signatures; the caller decides whether that is fatal.
    """
    gamma = inp.signature.quotient_genus
    total = 0
    for k, d in enumerate(inp.dims):
        twice = sum(b.count * (d - fixed[k]) for b, (_, fixed, _) in zip(inp.signature.branches, inp.branch_data))
        total += d * (gamma - 1) + _half(twice, f"dimension contribution of V{k + 1}")
    return total


def quotient_genus_x(inp: PresentationInput) -> int:
    """Genus of ``X = Z/H`` by Riemann-Hurwitz on the degree-[G:H] map to the quotient."""
    gamma = inp.signature.quotient_genus
    twice = sum(b.count * (inp.index - dc) for b, (_, _, dc) in zip(inp.signature.branches, inp.branch_data))
    g = 1 + inp.index * (gamma - 1) + _half(twice, "ramification of X")
    if g < 0:
        raise SignatureError(f"inconsistent signature: genus of X would be {g}")
    return g


def galois_cover_genus(G: PermGroup, signature: GeometricSignature) -> int:
    """``1 + |G|(gamma - 1) + (|G|/2) sum_j s_j (1 - 1/|G_j|)``."""
    total = Fraction(1 + G.order * (signature.quotient_genus - 1))
    for b in signature.branches:
        total += Fraction(G.order, 2) * b.count * (1 - Fraction(1, b.generator.order()))
    if total.denominator != 1:
        raise SignatureError(f"inconsistent signature: genus of the Galois cover would be {total}")
    if total < 0:
        raise SignatureError(f"inconsistent signature: genus of the Galois cover would be {total}")
    return int(total)


# ---------------------------------------------------------------------------
# Hecke operator on G/H


def hecke_matrix(inp: PresentationInput, coefficients=None, matrix_bound: int = DEFAULT_MATRIX_BOUND) -> list:
    """``M = sum_i b_i A_i`` on the coset space, rows and columns indexed by the transversal.

    ``M[y][x] = b_i`` when ``x^{-1} y`` lies in the i-th double coset.
    """
    if inp.index > matrix_bound:
        raise IndexTooLarge(f"index {inp.index} exceeds the matrix bound {matrix_bound}")
    if coefficients is None:
        coefficients = coefficient_list(inp)
    elif isinstance(coefficients, CorrespondenceData):
        coefficients = coefficients.coefficients
    dec = inp.decomposition
    trans = [x.images for x in dec.transversal()]
    inverses = [_inv(x) for x in trans]
    return [
        [coefficients[dec.double_coset_of(_mul(xinv, y))] for xinv in inverses]
        for y in trans
    ]


def commutes_with_action(inp: PresentationInput, m: list) -> bool:
    """Whether M commutes with the permutation action of every generator of G on G/H."""
    dec = inp.decomposition
    for g in inp.group.generators:
        perm = coset_action(dec, g)
        n = len(perm)
        for a in range(n):
            row_src, row_dst = m[a], m[perm[a]]
            for c in range(n):
                if row_dst[perm[c]] != row_src[c]:
                    return False
    return True


@dataclass
class ProjectorVerdict:
    scalar: int
    square_ok: bool
    rank: int
    expected_rank: int
    size: int = 0

    @property
    def holds(self) -> bool:
        return self.square_ok and self.rank == self.expected_rank

    def __bool__(self) -> bool:
        return self.holds

    def eigenvalues(self) -> dict:
        """Multiplicities; valid only when ``M^2 = cM`` (then M is diagonalizable)."""
        size = self.size
        out = {}
        if size - self.rank:
            out[0] = size - self.rank
        if self.rank:
            out[self.scalar] = out.get(self.scalar, 0) + self.rank
        return out


def projector_identity_check(m: list, b: int, q: int, reps: Sequence) -> ProjectorVerdict:
    """Check ``M^2 = (b q) M`` and ``rank M = sum_k dim V_k`` exactly.

    ``reps`` may hold class functions or plain dimensions.
    """
    c = b * q
    expected = sum(int(r.degree) if isinstance(r, ClassFunction) else int(r) for r in reps)
    square_ok = linalg.matmul(m, m) == linalg.scale(m, c)
    return ProjectorVerdict(c, square_ok, linalg.rank(m), expected, size=len(m))


# ---------------------------------------------------------------------------
# orchestration


@dataclass
class Check:
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class PrymReport:
    group_order: int
    index: int
    correspondence: CorrespondenceData | None = None
    criterion_residual: int | None = None
    criterion_terms: list | None = None
    dim_prym: int | None = None
    genus_x: int | None = None
    genus_z: int | None = None
    projector: ProjectorVerdict | None = None
    checks: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)

    @property
    def q(self) -> int | None:
        return self.correspondence.q if self.correspondence else None

    @property
    def b(self) -> int | None:
        return self.correspondence.b if self.correspondence else None

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks.values())

    @property
    def verdict(self) -> str:
        if self.valid:
            return f"valid Prym-Tyurin presentation of exponent {self.q}"
        failed = ", ".join(k for k, c in self.checks.items() if not c.passed)
        return f"not a valid presentation (failed: {failed})"

    def to_dict(self) -> dict:
        """Stable machine-readable form; integers become decimal strings."""

        def s(v):
            return None if v is None else str(v)

        corr = self.correspondence
        double_cosets = []
        if corr is not None:
            for rep, n_i, b_i in zip(corr.decomposition.reps, corr.decomposition.sizes, corr.coefficients):
                double_cosets.append({"rep": str(rep), "n_i": s(n_i), "b_i": s(b_i)})
        out = {
            "group_order": s(self.group_order),
            "index": s(self.index),
            "double_cosets": double_cosets,
            "b": s(self.b),
            "q": s(self.q),
            "dim_prym": s(self.dim_prym),
            "genus_x": s(self.genus_x),
            "genus_z": s(self.genus_z),
            "criterion_residual": s(self.criterion_residual),
            "criterion_terms": None if self.criterion_terms is None else [s(t) for t in self.criterion_terms],
            "checks": {k: {"status": c.status, "detail": c.detail} for k, c in self.checks.items()},
            "verdict": self.verdict,
            "valid": self.valid,
        }
        if self.projector is not None:
            out["spectrum"] = {s(k): s(v) for k, v in sorted(self.projector.eigenvalues().items())}
        if self.errors:
            out["errors"] = list(self.errors)
        return out


def run_presentation(
    inp: PresentationInput,
    *,
    matrix_bound: int = DEFAULT_MATRIX_BOUND,
    maximality: str | None = None,
) -> PrymReport:
    """Evaluate every check on one presentation and aggregate the results.

    Signature inconsistencies and a degenerate correspondence are recorded
    as failed checks; anything else propagates.
    """
    report = PrymReport(inp.group.order, inp.index)
    checks = report.checks

    problems = check_reps(inp)
    checks["representations"] = Check("fail" if problems else "pass", "; ".join(problems))

    iso = isotypic_condition(inp, maximality)
    dims_ok = all(d == 1 for d in iso.fixed_dims)
    checks["isotypic"] = Check(
        "pass" if dims_ok else "fail",
        f"dim V_k^H = {list(iso.fixed_dims)}",
    )
    checks["maximality"] = Check(
        "pass" if iso.maximal else "fail",
        iso.mode + ("" if iso.maximal else f"; <H, {iso.witness}> still fixes a vector in every V_k"),
    )

    try:
        report.correspondence = correspondence_coefficients(inp)
        checks["exponent"] = Check("pass", f"b = {report.b}, q = {report.q}")
    except (DegenerateCorrespondence, NonIntegralExponent) as exc:
        checks["exponent"] = Check("fail", str(exc))
        report.errors.append(str(exc))

    if report.correspondence is not None:
        if inp.signature.quotient_genus == 0:
            report.criterion_terms = criterion_terms(inp, report.q)
            report.criterion_residual = criterion_residual(inp, report.q)
            ok = report.criterion_residual == 0
            checks["criterion"] = Check("pass" if ok else "fail", f"residual {report.criterion_residual}")
        else:
            checks["criterion"] = Check("fail", "criterion stated only for genus-0 quotient")

    sig_problems = []
    for name, fn in (
        ("dim_prym", lambda: prym_dimension(inp)),
        ("genus_x", lambda: quotient_genus_x(inp)),
        ("genus_z", lambda: galois_cover_genus(inp.group, inp.signature)),
    ):
        try:
            setattr(report, name, fn())
        except SignatureError as exc:
            sig_problems.append(str(exc))
    if report.dim_prym is not None and report.dim_prym < 0:
        sig_problems.append(f"negative Prym dimension {report.dim_prym}")
    checks["signature"] = Check("fail" if sig_problems else "pass", "; ".join(sig_problems))

    if report.correspondence is None:
        checks["projector"] = Check("skipped", "no correspondence")
    elif inp.index > matrix_bound:
        checks["projector"] = Check("skipped", f"index {inp.index} exceeds matrix bound {matrix_bound}")
    else:
        m = hecke_matrix(inp, report.correspondence, matrix_bound)
        pv = projector_identity_check(m, report.b, report.q, inp.dims)
        report.projector = pv
        commute = commutes_with_action(inp, m)
        checks["projector"] = Check(
            "pass" if pv.holds and commute else "fail",
            f"M^2 = {pv.scalar} M: {pv.square_ok}; rank {pv.rank} (expected {pv.expected_rank}); "
            f"commutes with G: {commute}",
        )
    return report
