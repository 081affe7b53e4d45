import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymtyurin.constructions import Family, FamilySpec, jacobian_presentation, product_presentation
from prymtyurin.permgrp import Alternating, Symmetric, generate_group, point_stabilizer, subgroup
from prymtyurin.prym import (
    CriterionNotApplicable,
    DegenerateCorrespondence,
    GeometricSignature,
    IndexTooLarge,
    InvalidInput,
    PresentationInput,
    SignatureError,
    coefficient_list,
    commutes_with_action,
    correspondence_coefficients,
    criterion_residual,
    criterion_terms,
    galois_cover_genus,
    hecke_matrix,
    isotypic_condition,
    projector_identity_check,
    prym_dimension,
    quotient_genus_x,
    run_presentation,
)
from prymtyurin.reptheory import (
    ExplicitClassFunction,
    PermMinusTrivial,
    StandardOfSymmetric,
    character_of,
)


def symmetric_input(n, entries=(), genus=0, h=None):
    G = generate_group(Symmetric(n))
    H = point_stabilizer(G) if h is None else subgroup(G, h)
    return PresentationInput(G, H, (StandardOfSymmetric(G),), GeometricSignature.of(G, entries, genus))


# -- signatures ------------------------------------------------------------------


def test_signature_rejects_conjugate_cyclic_subgroups():
    G = generate_group(Symmetric(4))
    with pytest.raises(InvalidInput):
        PresentationInput(G, point_stabilizer(G), (StandardOfSymmetric(G),),
                          GeometricSignature.of(G, [("(1 2)", 2), ("(3 4)", 2)]))
    # (1 2 3) and (1 3 2) generate the same subgroup
    with pytest.raises(InvalidInput):
        PresentationInput(G, point_stabilizer(G), (StandardOfSymmetric(G),),
                          GeometricSignature.of(G, [("(1 2 3)", 2), ("(1 3 2)", 2)]))


@pytest.mark.parametrize("entries", [[("()", 2)], [("(1 2)", 0)]])
def test_signature_rejects_bad_entries(entries):
    with pytest.raises(InvalidInput):
        symmetric_input(3, entries)


def test_signature_rejects_foreign_generators():
    G = generate_group(Alternating(5))
    with pytest.raises(InvalidInput):
        PresentationInput(G, point_stabilizer(G), (PermMinusTrivial(point_stabilizer(G)),),
                          GeometricSignature.of(G, [("(1 2)", 2)]))


# -- isotypic condition ----------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 7))
def test_isotypic_condition_symmetric(n):
    verdict = isotypic_condition(symmetric_input(n))
    assert verdict.holds
    assert verdict.mode == "exhaustive"


def test_isotypic_condition_fails_for_klein_four():
    verdict = isotypic_condition(symmetric_input(4, h=["(1 2)(3 4)", "(1 3)(2 4)"]))
    assert verdict.fixed_dims == (0,)
    assert not verdict.holds


def test_maximality():
    # <(1 2), (3 4)> fixes a line; its overgroups D4 and S4 fix nothing
    assert isotypic_condition(symmetric_input(4, h=["(1 2)", "(3 4)"])).holds
    # <(1 2 3)> fixes a line, but so does the larger stabilizer of 4
    verdict = isotypic_condition(symmetric_input(4, h=["(1 2 3)"]))
    assert verdict.fixed_dims == (1,)
    assert not verdict.maximal
    assert verdict.witness is not None
    assert isotypic_condition(symmetric_input(4, h=["(1 2)"])).fixed_dims == (2,)


def test_structural_maximality_agrees_with_exhaustive():
    inp = product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2)))
    assert isotypic_condition(inp, "structural").holds
    assert isotypic_condition(inp, "exhaustive").holds


# -- coefficients ------------------------------------------------------------------


def test_s3_coefficients():
    data = correspondence_coefficients(symmetric_input(3))
    assert data.coefficients == [2, -1]
    assert (data.b, data.q) == (3, 1)


@pytest.mark.parametrize("n", range(3, 8))
def test_symmetric_coefficients(n):
    a = coefficient_list(symmetric_input(n))
    assert a == [math.factorial(n - 1), -math.factorial(n - 2)]


def test_s3_squared_coefficients():
    data = correspondence_coefficients(product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2))))
    assert data.coefficients == [8, 2, 2, -4]
    assert (data.b, data.q) == (6, 3)


@pytest.mark.parametrize("spec", [Symmetric(n) for n in range(3, 8)] + [Alternating(n) for n in range(4, 8)])
def test_first_coefficient_is_order_of_h(spec):
    G = generate_group(spec)
    H = point_stabilizer(G)
    rep = StandardOfSymmetric(G) if isinstance(spec, Symmetric) else PermMinusTrivial(H)
    data = correspondence_coefficients(PresentationInput(G, H, (rep,)))
    assert data.coefficients[0] == H.order
    assert all((data.coefficients[0] - c) % data.b == 0 for c in data.coefficients)
    assert data.q * data.b * character_of(rep).degree == G.order


def test_degenerate_correspondence():
    G = generate_group(Symmetric(3))
    H = subgroup(G, ["(1 2)", "(1 2 3)"])
    inp = PresentationInput(G, H, (ExplicitClassFunction(G, (1, 1, 1)),))
    with pytest.raises(DegenerateCorrespondence):
        correspondence_coefficients(inp)
    report = run_presentation(inp)
    assert not report.valid
    assert report.checks["exponent"].status == "fail"
    assert hecke_matrix(inp) == [[6]]


# -- criterion ---------------------------------------------------------------------


@given(st.integers(1, 20))
@settings(max_examples=10, deadline=None)
def test_criterion_vanishes_for_simple_covers(s):
    inp = symmetric_input(4, [("(1 2)", s)])
    assert criterion_residual(inp, 1) == 0


def test_alternating_double_transposition_term():
    G = generate_group(Alternating(7))
    H = point_stabilizer(G)
    inp = PresentationInput(G, H, (PermMinusTrivial(H),), GeometricSignature.of(G, [("(1 2)(3 4)", 9)]))
    assert inp.branch_data[0] == (2, (4,), 5)
    assert criterion_terms(inp, 1) == [0]
    assert criterion_residual(inp, 1) == 0


def test_four_cycle_term_in_s4():
    # dim V^<c> = 0 for a 4-cycle and |H\G/<c>| = 1, so the term is 1*3 - 3 = 0
    inp = symmetric_input(4, [("(1 2 3 4)", 4)])
    assert inp.branch_data[0] == (4, (0,), 1)
    assert criterion_terms(inp, 1) == [0]
    report = run_presentation(inp)
    assert report.valid and (report.dim_prym, report.genus_x) == (3, 3)


def test_four_cycle_odd_count_is_an_inconsistent_signature():
    inp = symmetric_input(4, [("(1 2 3 4)", 5)])
    with pytest.raises(SignatureError):
        quotient_genus_x(inp)
    report = run_presentation(inp)
    assert report.criterion_residual == 0
    assert report.checks["signature"].status == "fail"
    assert not report.valid


def test_diagonal_classes_break_the_product_criterion():
    spec = FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2))
    base = product_presentation(spec)
    G = base.group
    inp = PresentationInput(G, base.subgroup, base.reps,
                            GeometricSignature.of(G, [("(1 2)", 8), ("(1 2)(4 5)", 8), ("(1 2 3)(4 5 6)", 1)]))
    assert criterion_terms(inp, 3) == [0, 2, 6]
    assert criterion_residual(inp, 3) == 22


def test_criterion_needs_genus_zero():
    inp = symmetric_input(3, [("(1 2)", 2)], genus=1)
    with pytest.raises(CriterionNotApplicable):
        criterion_residual(inp, 1)
    assert run_presentation(inp).checks["criterion"].status == "fail"


# -- dimensions and genera ----------------------------------------------------------


def test_prym_dimension_examples():
    assert prym_dimension(symmetric_input(4, [("(1 2)", 12)])) == 3
    assert prym_dimension(product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2)))) == 4
    assert prym_dimension(symmetric_input(4)) == -3


@given(st.integers(3, 6), st.integers(0, 6))
@settings(max_examples=15, deadline=None)
def test_jacobian_presentation_genus(n, g):
    inp = symmetric_input(n, [("(1 2)", 2 * (g + n - 1))])
    assert quotient_genus_x(inp) == g
    assert prym_dimension(inp) == g


@pytest.mark.parametrize("g1, g2", [(2, 2), (2, 3), (3, 3), (4, 2)])
def test_hyperelliptic_pairs(g1, g2):
    report = run_presentation(product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 2, (g1, g2))))
    assert report.genus_x == 2 * (g1 + g2) + 1
    assert report.q == 2


def test_galois_cover_genus():
    G = generate_group(Symmetric(3))
    assert galois_cover_genus(G, GeometricSignature.of(G, [("(1 2)", 8)])) == 7
    assert galois_cover_genus(G, GeometricSignature(1, ())) == 1
    P = product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2)))
    assert galois_cover_genus(P.group, P.signature) == 109
    with pytest.raises(SignatureError):
        galois_cover_genus(G, GeometricSignature.of(G, [("(1 2 3)", 1)]))


# -- Hecke operator --------------------------------------------------------------------


def test_s3_hecke_matrix():
    inp = symmetric_input(3)
    assert hecke_matrix(inp) == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]


def test_s3_squared_hecke_matrix():
    inp = product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2)))
    m = hecke_matrix(inp)
    G = inp.group
    trans = inp.decomposition.transversal()
    decs = _factor_decs(inp)

    def coords(x):
        return [f.left_coset_of(p) for f, p in zip(decs, G.split(x.images))]

    a = [[3 * (i == j) - 1 for j in range(3)] for i in range(3)]
    for r, y in enumerate(trans):
        for c, x in enumerate(trans):
            (y1, y2), (x1, x2) = coords(y), coords(x)
            assert m[r][c] == 2 * (a[y1][x1] + a[y2][x2])


def _factor_decs(inp):
    from prymtyurin.permgrp import simultaneous_coset_reps

    return [simultaneous_coset_reps(f, h) for f, h in zip(inp.group.factors, inp.subgroup.factors)]


@pytest.mark.parametrize(
    "inp",
    [
        pytest.param(lambda: symmetric_input(3), id="S3"),
        pytest.param(lambda: symmetric_input(5), id="S5"),
        pytest.param(lambda: product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2, 2))), id="S3^3"),
        pytest.param(lambda: product_presentation(FamilySpec(Family.ALT_THREE_CYCLE, 7, (3, 3))), id="A7^2"),
        pytest.param(lambda: symmetric_input(4, h=["(1 2)"]), id="S4-over-C2"),
    ],
)
def test_projector_identity(inp):
    inp = inp()
    data = correspondence_coefficients(inp)
    m = hecke_matrix(inp, data)
    assert commutes_with_action(inp, m)
    verdict = projector_identity_check(m, data.b, data.q, inp.characters)
    assert verdict.square_ok
    # rank is sum_k dim V_k * dim V_k^H, which is sum_k dim V_k under the isotypic condition
    fixed = isotypic_condition(inp).fixed_dims
    assert verdict.rank == sum(d * f for d, f in zip(inp.dims, fixed))


def test_spectrum_of_s3_squared():
    inp = product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2)))
    data = correspondence_coefficients(inp)
    verdict = projector_identity_check(hecke_matrix(inp, data), data.b, data.q, inp.dims)
    assert verdict.holds
    assert verdict.eigenvalues() == {0: 5, 18: 4}


def test_projector_check_reports_failure_without_raising():
    m = [[1, 0], [0, 2]]
    verdict = projector_identity_check(m, 1, 1, [2])
    assert not verdict.square_ok
    assert not verdict.holds


def test_matrix_bound():
    with pytest.raises(IndexTooLarge):
        hecke_matrix(symmetric_input(5), matrix_bound=4)
    report = run_presentation(symmetric_input(5, [("(1 2)", 12)]), matrix_bound=4)
    assert report.checks["projector"].status == "skipped"
    assert report.valid


# -- orchestration ---------------------------------------------------------------------


def test_run_presentation_s4():
    report = run_presentation(jacobian_presentation(4, 3))
    assert (report.q, report.dim_prym, report.genus_x, report.criterion_residual) == (1, 3, 3, 0)
    assert report.valid
    assert report.verdict == "valid Prym-Tyurin presentation of exponent 1"


def test_run_presentation_product():
    report = run_presentation(product_presentation(FamilySpec(Family.SYMMETRIC_SIMPLE, 3, (2, 2))))
    assert (report.q, report.dim_prym, report.genus_x, report.criterion_residual) == (3, 4, 16, 0)
    doc = report.to_dict()
    assert doc["q"] == "3"
    assert [d["b_i"] for d in doc["double_cosets"]] == ["8", "2", "2", "-4"]
    assert doc["spectrum"] == {"0": "5", "18": "4"}


def test_reducible_representation_is_reported():
    G = generate_group(Symmetric(3))
    H = point_stabilizer(G)
    inp = PresentationInput(G, H, (ExplicitClassFunction(G, (3, 1, 0)),), GeometricSignature.of(G, [("(1 2)", 8)]))
    report = run_presentation(inp)
    assert report.checks["representations"].status == "fail"
    assert not report.valid


def test_empty_signature_is_flagged():
    report = run_presentation(symmetric_input(3))
    assert report.dim_prym == -2
    assert report.checks["signature"].status == "fail"
