import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from logbs.arith import MultiPoly
from logbs.frontend import parse_poly
from logbs.support import (
    AffineFlat,
    LinearForm,
    NonSplitError,
    TorsionCoset,
    coset_contains,
    coset_equal,
    decompose_locus,
    exp_image,
    exp_image_of_locus,
    exp_images_equal,
    factor_linear,
    locus_contains_point,
    splits,
)

S1 = ("s",)
S2 = ("s1", "s2")
S3 = ("s1", "s2", "s3")


def product(factors, svars):
    out = MultiPoly.constant(svars, 1)
    for L, k in factors:
        out = out * L.poly(svars) ** k
    return out


def test_linear_form_normalization():
    L = LinearForm.from_coefficients([2, -4], 1)
    assert L.slope == (1, -2)
    assert L.constant == Fraction(1, 2)
    M = LinearForm.from_coefficients([-3, 0], 3)
    assert M.slope == (1, 0) and M.constant == -1


def test_factor_bernstein_polynomial_of_cusp():
    p = parse_poly("(s + 1)*(6*s + 5)*(6*s + 7)", S1)
    factors, residual = factor_linear(p)
    assert residual.is_constant()
    assert sorted(L.constant for L, _ in factors) == [Fraction(5, 6), Fraction(1), Fraction(7, 6)]


def test_factor_with_multiplicity_and_residual():
    p = parse_poly("(s1 + 1)^2*(s1^2 + s2^2 + 1)", S2)
    factors, residual = factor_linear(p)
    assert [(L.slope, k) for L, k in factors] == [((1, 0), 2)]
    assert residual == parse_poly("s1^2 + s2^2 + 1", S2)
    assert not splits(p)


def test_factor_mixed_slopes_matches_sympy():
    text = "(s1 + s2 + 1)*(s1 + s2 + 2)*(2*s1 - s2 + 1/2)*(s2 + 3)"
    p = parse_poly(text, S2)
    factors, residual = factor_linear(p)
    assert residual.is_constant()
    assert product(factors, S2) * residual == p
    expected = sympy.factor_list(sympy.sympify(text.replace("^", "**")))[1]
    assert sum(k for _, k in expected) == sum(k for _, k in factors)


def test_factor_three_parameters():
    p = parse_poly("(s1 + s2 + s3 + 2)*(s1 + 1)*(s2 + s3 + 1)^2", S3)
    factors, residual = factor_linear(p)
    assert residual.is_constant()
    assert product(factors, S3) * residual == p


def test_decompose_locus_examples():
    gens = [parse_poly("(s1 + 1)*(s2 + 1)", S2)]
    locus = decompose_locus(gens, 2)
    assert sorted(str(c) for c in locus) == ["{s1 + 1 = 0}", "{s2 + 1 = 0}"]
    gens = [parse_poly("s2 + 1", S2), parse_poly("s1 + 1", S2)]
    locus = decompose_locus(gens, 2)
    assert len(locus) == 1 and locus.components[0].dimension == 0
    assert locus_contains_point(gens, (Fraction(-1), Fraction(-1)))
    assert not locus_contains_point(gens, (Fraction(0), Fraction(-1)))


def test_decompose_locus_rejects_non_split():
    with pytest.raises(NonSplitError):
        decompose_locus([parse_poly("s1^2 + s2^2 + 1", S2)], 2)


def test_flat_intersections():
    a = AffineFlat.from_forms([LinearForm.from_coefficients([1, 0], 1)], 2)
    b = AffineFlat.from_forms([LinearForm.from_coefficients([1, 0], 2)], 2)
    c = AffineFlat.from_forms([LinearForm.from_coefficients([0, 1], 1)], 2)
    assert a.intersect(b) is None
    p = a.intersect(c)
    assert p.dimension == 0
    assert a.contains(p)
    assert not c.contains(a)
    assert p.point() == (Fraction(-1), Fraction(-1))


def test_exp_image_examples():
    # s + 1/2 = 0 maps to lambda = -1
    E = exp_image(LinearForm.from_coefficients([1], Fraction(1, 2)))
    assert E.contains_point((Fraction(1, 2),))
    assert not E.contains_point((Fraction(0),))
    # integer translates give the same image
    assert coset_equal(exp_image(LinearForm.from_coefficients([1, 1], 1)),
                       exp_image(LinearForm.from_coefficients([1, 1], 3)))


def test_coset_equality_and_containment():
    A = TorsionCoset(2, ((1, 1),), (Fraction(0),))
    B = TorsionCoset(2, ((2, 2),), (Fraction(0),))
    assert not coset_equal(A, B)
    assert coset_contains(B, A)
    assert not coset_contains(A, B)
    # lambda = (-1, 1) separates them
    point = (Fraction(1, 2), Fraction(0))
    assert B.contains_point(point) and not A.contains_point(point)


def test_inconsistent_coset_is_empty():
    C = TorsionCoset(2, ((1, 0), (2, 0)), (Fraction(1, 2), Fraction(1, 2)))
    assert C.empty
    assert str(C) == "empty"


def test_hermite_canonical_form_makes_equal_cosets_identical():
    A = TorsionCoset(2, ((1, 1), (0, 1)), (Fraction(1, 3), Fraction(0)))
    B = TorsionCoset(2, ((1, 0), (1, 1)), (Fraction(1, 3), Fraction(1, 3)))
    assert A == B


def test_exp_images_of_power_loci_agree():
    one = decompose_locus([parse_poly("(s1 + 1)*(s2 + 1)", S2)], 2)
    two = decompose_locus([parse_poly("(s1 + 1)*(s1 + 2)*(s2 + 1)*(s2 + 2)", S2)], 2)
    assert exp_images_equal(exp_image_of_locus(one), exp_image_of_locus(two))


slopes = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any)
consts = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(slopes, consts, st.integers(1, 2)), min_size=1, max_size=3))
def test_factor_linear_reconstructs_products(factors_in):
    p = MultiPoly.constant(S2, 1)
    for slope, c, k in factors_in:
        p = p * LinearForm.from_coefficients(list(slope), c).poly(S2) ** k
    factors, residual = factor_linear(p)
    assert residual.is_constant()
    assert product(factors, S2) * residual == p
    assert sum(k for _, k in factors) == sum(k for _, _, k in factors_in)


@settings(max_examples=80, deadline=None)
@given(slopes, consts, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_exp_image_invariant_under_integer_translation(slope, c, z):
    flat = AffineFlat.from_forms([LinearForm.from_coefficients(list(slope), c)], 2)
    moved = flat.translate(z)
    assert coset_equal(exp_image(flat), exp_image(moved))


@settings(max_examples=60, deadline=None)
@given(slopes, consts, st.integers(-5, 5))
def test_exp_image_contains_sampled_points(slope, c, seed):
    flat = AffineFlat.from_forms([LinearForm.from_coefficients(list(slope), c)], 2)
    E = exp_image(flat)
    point = flat.sample(random.Random(seed))
    # lambda = exp(-2 pi i s)
    assert E.contains_point(tuple(-x for x in point))
    assert E.is_torsion()
