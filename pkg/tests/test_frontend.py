from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from logbs.arith import MultiPoly
from logbs.frontend import DEFAULT_OPTIONS, JobError, ParseError, UnknownVariable, parse_job, parse_poly

XY = ("x", "y")


def test_precedence_and_unary_minus():
    assert parse_poly("-x^2", XY) == -(parse_poly("x", XY) ** 2)
    assert parse_poly("2*x + 3*y^2", XY) == MultiPoly(XY, {(1, 0): 2, (0, 2): 3})
    assert parse_poly("(x + y)^2", XY) == parse_poly("x^2 + 2*x*y + y^2", XY)


def test_rational_literals():
    p = parse_poly("3/4*x + 1/2", XY)
    assert p.terms[(1, 0)] == Fraction(3, 4)
    assert p.constant_term() == Fraction(1, 2)


@pytest.mark.parametrize("text, column", [
    ("x + z", 5),
    ("x ++", 5),
    ("2*x^", 5),
    ("x $ y", 3),
    ("1/0", 1),
])
def test_errors_carry_position(text, column):
    with pytest.raises(ParseError) as err:
        parse_poly(text, XY)
    assert err.value.line == 1
    assert err.value.column == column


def test_unknown_variable_type():
    with pytest.raises(UnknownVariable):
        parse_poly("q", XY)


def test_job_defaults():
    job = parse_job("vars = [x]\nF = [x^2]\nK = [1]\n")
    assert job.K == [(1,)]
    assert job.m == (0,)
    assert job.options == DEFAULT_OPTIONS
    assert job.n == 1 and job.r == 1


def test_job_full_document_round_trips():
    text = "vars = [x, y]  # plane\nF = [x, y]; K = [[1, 1]]\nm = [1, 0]\noptions = [W=4, cap=30]\n"
    job = parse_job(text)
    assert job.m == (1, 0)
    assert job.options["W"] == 4 and job.options["cap"] == 30
    again = parse_job(job.to_text())
    assert again.to_dict() == job.to_dict()


def test_position_of_bad_entry_in_F():
    with pytest.raises(UnknownVariable) as err:
        parse_job("vars = [x]\nF = [x, q]\nK = [[1, 1]]\n")
    assert (err.value.line, err.value.column) == (2, 9)


def test_unknown_section_column():
    with pytest.raises(ParseError) as err:
        parse_job("vars = [x]; F = [x]; K = [1]; bogus = 3")
    assert err.value.column == 31


@pytest.mark.parametrize("text", [
    "vars = [x]\nF = [x]\nK = [[1, 1]]",
    "vars = [x]\nF = [x]\nK = [0]",
    "vars = [x]\nF = [0]\nK = [1]",
    "vars = [x]\nF = [x]",
])
def test_structural_job_errors(text):
    with pytest.raises(JobError):
        parse_job(text)


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                       st.fractions(min_value=-5, max_value=5, max_denominator=6), max_size=5))
def test_printing_then_parsing_is_identity(terms):
    p = MultiPoly(XY, terms)
    assert parse_poly(str(p), XY) == p
