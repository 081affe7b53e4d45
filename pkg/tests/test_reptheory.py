from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prymtyurin import linalg
from prymtyurin.permgrp import (
    Alternating,
    Permutation,
    Product,
    Symmetric,
    _mul,
    cyclic_subgroup,
    double_cosets,
    generate_group,
    point_stabilizer,
    subgroup,
    whole_group,
)
from prymtyurin.reptheory import (
    ClassFunction,
    ExplicitClassFunction,
    NotACharacter,
    OuterTensor,
    PermMinusTrivial,
    StandardOfSymmetric,
    character_of,
    double_coset_count,
    fixed_space_dim,
    induced_trivial_character,
    inner_product,
    is_valid_irreducible,
    standard_matrix,
    subgroup_sum,
    trivial_character,
)


def sign_character(G):
    return ClassFunction(G, [c.representative.sign() for c in G.conjugacy_classes()])


def brute_permutation_character(H):
    """Number of left cosets xH fixed by g, by direct enumeration."""
    G = H.ambient
    h = H.elements()
    cosets = {frozenset(_mul(x, y) for y in h) for x in G.elements()}
    values = []
    for c in G.conjugacy_classes():
        g = c.representative.images
        values.append(sum(1 for C in cosets if frozenset(_mul(g, x) for x in C) == C))
    return values


@pytest.mark.parametrize("n", range(2, 7))
def test_standard_character_is_irreducible(n):
    G = generate_group(Symmetric(n))
    chi = character_of(StandardOfSymmetric(G))
    assert chi.degree == n - 1
    assert inner_product(chi, chi) == 1
    assert is_valid_irreducible(chi)
    assert inner_product(chi, trivial_character(G)) == 0


@pytest.mark.parametrize("n", range(4, 8))
def test_alternating_perm_minus_trivial_is_irreducible(n):
    G = generate_group(Alternating(n))
    chi = character_of(PermMinusTrivial(point_stabilizer(G)))
    assert is_valid_irreducible(chi).valid


def test_trivial_and_reducible_verdicts():
    G = generate_group(Symmetric(4))
    v = is_valid_irreducible(trivial_character(G))
    assert v.valid and v.trivial
    rho = induced_trivial_character(point_stabilizer(G))
    assert inner_product(rho, rho) == 2
    assert not is_valid_irreducible(rho)


@pytest.mark.parametrize(
    "spec, gens",
    [
        (Symmetric(4), ["(1 2)"]),
        (Symmetric(4), ["(1 2 3)"]),
        (Symmetric(5), ["(1 2)", "(3 4 5)"]),
        (Alternating(5), ["(1 2)(3 4)"]),
        (Alternating(5), ["(1 2 3)", "(1 2)(4 5)"]),
    ],
)
def test_induced_character_counts_fixed_cosets(spec, gens):
    G = generate_group(spec)
    H = subgroup(G, gens)
    rho = induced_trivial_character(H)
    assert [int(v) for v in rho.values] == brute_permutation_character(H)
    assert rho.degree == G.order // H.order


@pytest.mark.parametrize("n", range(3, 7))
def test_frobenius_reciprocity(n):
    G = generate_group(Symmetric(n))
    H = point_stabilizer(G)
    rho = induced_trivial_character(H)
    for chi in (trivial_character(G), sign_character(G), character_of(StandardOfSymmetric(G))):
        assert inner_product(rho, chi) == fixed_space_dim(chi, H)


@pytest.mark.parametrize(
    "spec, h_gens, k_gens",
    [
        (Symmetric(4), None, ["(1 2)"]),
        (Symmetric(5), None, ["(1 2)(3 4)"]),
        (Alternating(7), None, ["(1 2)(3 4)"]),
        (Alternating(6), None, ["(1 2 3)"]),
        (Symmetric(4), ["(1 2)", "(3 4)"], ["(1 2 3 4)"]),
    ],
)
def test_double_coset_count_by_characters(spec, h_gens, k_gens):
    G = generate_group(spec)
    H = point_stabilizer(G) if h_gens is None else subgroup(G, h_gens)
    K = subgroup(G, k_gens)
    assert double_coset_count(H, K) == len(double_cosets(G, H, K))


def test_symmetric_tau_counts():
    # |H\G/<tau>| = n - 1 and dim V^<tau> = n - 2
    for n in range(3, 8):
        G = generate_group(Symmetric(n))
        H = point_stabilizer(G)
        T = cyclic_subgroup(G, "(1 2)")
        assert double_coset_count(H, T) == n - 1
        assert fixed_space_dim(character_of(StandardOfSymmetric(G)), T) == n - 2


def test_outer_tensor_character():
    P = generate_group(Product((Symmetric(3), Symmetric(4))))
    rep = OuterTensor.at(P, 1, StandardOfSymmetric(P.factors[1]))
    chi = character_of(rep)
    assert chi.degree == 3
    assert is_valid_irreducible(chi)
    g = Permutation.parse("(1 2)(4 5 6)", 7)
    assert chi(g) == 0  # a 3-cycle in S4 fixes one point
    H = point_stabilizer(P)
    assert fixed_space_dim(chi, H) == 1


def test_product_histogram_matches_plain():
    P = generate_group(Product((Symmetric(3), Symmetric(3))))
    H = point_stabilizer(P)
    chi = character_of(OuterTensor.at(P, 0, StandardOfSymmetric(P.factors[0])))
    G = P.plain()
    shift = Permutation.parse("(1 3)(4 6)", 6)
    fast = subgroup_sum(chi, H, shift)
    slow = sum(chi(_mul(h, shift.images)) for h in subgroup(G, H.generators).elements())
    assert fast == slow


def test_fixed_space_dim_rejects_non_characters():
    G = generate_group(Symmetric(3))
    half = ClassFunction(G, [Fraction(1, 2)] * 3)
    with pytest.raises(NotACharacter):
        fixed_space_dim(half, cyclic_subgroup(G, "(1 2)"))


def test_class_function_arithmetic():
    G = generate_group(Symmetric(3))
    chi = character_of(StandardOfSymmetric(G))
    one = trivial_character(G)
    assert chi + one == induced_trivial_character(point_stabilizer(G))
    assert (chi * chi) - chi == 2 * chi * chi - chi * chi - chi
    with pytest.raises(ValueError):
        ClassFunction(G, [1, 2])
    assert character_of(ExplicitClassFunction(G, (2, 0, -1))) == chi
    assert fixed_space_dim(one, whole_group(G)) == 1


# -- the matrices of the standard representation ---------------------------------


def test_generator_matrices():
    n = 5
    sigma = Permutation.parse("(1 2 3 4 5)", n)
    tau = Permutation.parse("(1 2)", n)
    expected_sigma = [
        [0, 0, 0, -1],
        [1, 0, 0, -1],
        [0, 1, 0, -1],
        [0, 0, 1, -1],
    ]
    expected_tau = [
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    assert standard_matrix(sigma) == expected_sigma
    assert standard_matrix(tau) == expected_tau


@given(st.permutations(list(range(5))), st.permutations(list(range(5))))
def test_standard_matrices_are_an_anti_homomorphism_with_right_traces(a, b):
    p, q = Permutation(tuple(a)), Permutation(tuple(b))
    assert standard_matrix(p * q) == linalg.matmul(standard_matrix(q), standard_matrix(p))
    trace = sum(standard_matrix(p)[i][i] for i in range(4))
    assert trace == p.fixed_points() - 1


def test_natural_character_of_s3():
    G = generate_group(Symmetric(3))
    rho = induced_trivial_character(point_stabilizer(G))
    # classes in canonical order: e, (2 3) type, (1 2 3) type
    assert [c.representative.order() for c in G.conjugacy_classes()] == [1, 2, 3]
    assert rho.values == (3, 1, 0)
    assert induced_trivial_character(whole_group(G)) == trivial_character(G)


def test_alternating_fixed_space_under_three_cycle():
    G = generate_group(Alternating(7))
    chi = character_of(PermMinusTrivial(point_stabilizer(G)))
    assert fixed_space_dim(chi, cyclic_subgroup(G, "(1 2 3)")) == 4
    assert fixed_space_dim(chi, cyclic_subgroup(G, "(1 2)(3 4)")) == 4
