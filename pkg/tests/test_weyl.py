
import pytest
from hypothesis import given, settings, strategies as st

from logbs.frontend import parse_poly
from logbs.weyl import (
    AlgebraProfile,
    TransporterError,
    TwistedContext,
    TwistedElement,
    WeylElement,
    act_on_twisted,
    dehomogenize,
    homogenize,
    is_h_homogeneous,
    is_log_element,
    parse_operator,
    right_transporter,
    t_monomial,
    t_shift_action,
    weyl_mul,
)

D1 = AlgebraProfile(("x",), (), ())
D2T = AlgebraProfile(("x", "y"), ("t1", "t2"), ())
D1S = AlgebraProfile(("x",), (), ("s",))
D2S = AlgebraProfile(("x", "y"), (), ("s1", "s2"))


def op(text, profile):
    return parse_operator(text, profile)


def test_canonical_commutators():
    x, dx = WeylElement.var(D2T, "x"), WeylElement.var(D2T, "dx")
    t1, dt1 = WeylElement.var(D2T, "t1"), WeylElement.var(D2T, "dt1")
    y = WeylElement.var(D2T, "y")
    one = WeylElement.one(D2T)
    assert dx * x - x * dx == one
    assert dt1 * t1 - t1 * dt1 == one
    assert dx * y - y * dx == WeylElement.zero(D2T)
    assert dt1 * x - x * dt1 == WeylElement.zero(D2T)


def test_central_parameters_commute():
    s, x, dx = (WeylElement.var(D1S, v) for v in ("s", "x", "dx"))
    assert s * dx == dx * s
    assert s * x == x * s


def test_normal_ordering_of_dx_squared_times_x_squared():
    P = weyl_mul(op("dx^2", D1), op("x^2", D1))
    assert P == op("x^2*dx^2 + 4*x*dx + 2", D1)


def test_print_parse_round_trip():
    P = op("3*x^2*dx + 1/2*x*dx^2 - 7", D1)
    assert parse_operator(str(P), D1) == P


def test_homogenize_pads_and_round_trips():
    P = op("x*dx + 1", D1)
    H = homogenize(P)
    assert is_h_homogeneous(H)
    assert dehomogenize(H) == P
    h = WeylElement.var(H.profile, "h")
    x, dx = WeylElement.var(H.profile, "x"), WeylElement.var(H.profile, "dx")
    assert dx * x - x * dx == h * h


def test_right_transporter_examples():
    prof = AlgebraProfile(("x",), ("t",), ())
    Q = right_transporter(op("t*dt", prof), [1])
    assert Q == op("t*dt + 1", prof)
    assert right_transporter(op("x", prof), [3]) == op("x", prof)
    assert right_transporter(op("dt", prof), [0]) == op("dt", prof)


def test_right_transporter_rejects_undercovered_dt():
    prof = AlgebraProfile(("x",), ("t",), ())
    # dt * t^2 = t^2 * dt + 2 * t leaves a term not divisible by t^2
    with pytest.raises(TransporterError):
        right_transporter(op("dt", prof), [2])


def _log_elements():
    # products of x, y, dx, dy, t_i, t_i*dt_i keep the log condition
    gens = ["x", "y", "dx", "dy", "t1", "t2", "t1*dt1", "t2*dt2"]
    word = st.lists(st.sampled_from(gens), min_size=0, max_size=3)
    term = st.tuples(st.integers(-3, 3), word)
    return st.lists(term, min_size=1, max_size=3)


def _build(terms, profile):
    out = WeylElement.zero(profile)
    for c, word in terms:
        m = WeylElement.constant(profile, c)
        for g in word:
            m = m * op(g, profile)
        out = out + m
    return out


@settings(max_examples=100, deadline=None)
@given(_log_elements(), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_right_transporter_identity_on_log_elements(terms, gamma):
    P = _build(terms, D2T)
    assert is_log_element(P)
    Q = right_transporter(P, gamma)
    T = t_monomial(D2T, gamma)
    assert weyl_mul(P, T) - weyl_mul(T, Q) == WeylElement.zero(D2T)
    assert is_log_element(Q)


def _elements(profile, max_exp=2, max_terms=3):
    mono = st.tuples(*[st.integers(0, max_exp) for _ in range(profile.nvars)])
    return st.dictionaries(mono, st.integers(-4, 4), min_size=1, max_size=max_terms).map(
        lambda d: WeylElement(profile, d))


@settings(max_examples=200, deadline=None)
@given(_elements(D2T, max_exp=1), _elements(D2T, max_exp=1), _elements(D2T, max_exp=1))
def test_associativity_random_triples(a, b, c):
    assert weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c))


def test_log_derivative_rule():
    ctx = TwistedContext([parse_poly("x^2 + y^2", ("x", "y"))])
    v = act_on_twisted(op("dx", AlgebraProfile(("x", "y"), (), ("s",))), TwistedElement.unit(ctx))
    assert v.N <= 1
    expected = TwistedElement(parse_poly("2*s*x", ("x", "y", "s")), 1, ctx)
    assert v == expected


def test_t_shift_examples():
    ctx = TwistedContext([parse_poly("x", ("x", "y")), parse_poly("y", ("x", "y"))])
    unit = TwistedElement.unit(ctx)
    assert t_shift_action((1, 0), unit) == TwistedElement(parse_poly("x", ctx.ring), 0, ctx)
    s1 = TwistedElement(parse_poly("s1", ctx.ring), 0, ctx)
    assert t_shift_action((1, 0), s1) == TwistedElement(parse_poly("(s1 + 1)*x", ctx.ring), 0, ctx)
    assert t_shift_action((0, 0), s1) == s1


@settings(max_examples=50, deadline=None)
@given(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_t_shift_is_additive(g1, g2):
    ctx = TwistedContext([parse_poly("x + y", ("x", "y")), parse_poly("x", ("x", "y"))])
    v = TwistedElement(parse_poly("s1*s2 + x", ctx.ring), 0, ctx)
    both = tuple(a + b for a, b in zip(g1, g2))
    assert t_shift_action(both, v) == t_shift_action(g1, t_shift_action(g2, v))


@settings(max_examples=60, deadline=None)
@given(_elements(D2S, max_exp=1, max_terms=2), _elements(D2S, max_exp=1, max_terms=2),
       st.sampled_from(["1", "x", "s1*y + 1", "x*y - s2"]))
def test_action_is_a_module_action(P, Q, coeff):
    ctx = TwistedContext([parse_poly("x*y + 1", ("x", "y")), parse_poly("x", ("x", "y"))])
    v = TwistedElement(parse_poly(coeff, ctx.ring), 0, ctx)
    assert act_on_twisted(weyl_mul(P, Q), v) == act_on_twisted(P, act_on_twisted(Q, v))


def test_functional_equation_for_x_cubed():
    # dx^3 x^{3(s+1)} = (3s+3)(3s+2)(3s+1) x^{3s}
    ctx = TwistedContext([parse_poly("x^3", ("x",))])
    lhs = act_on_twisted(op("dx^3", D1S), TwistedElement.shifted(ctx, (1,)))
    rhs = TwistedElement.unit(ctx).scale(parse_poly("(3*s+3)*(3*s+2)*(3*s+1)", ctx.ring))
    assert lhs == rhs


def test_twisted_element_reduces_denominators():
    ctx = TwistedContext([parse_poly("x", ("x",))])
    v = TwistedElement(parse_poly("x^2", ctx.ring), 1, ctx)
    assert v.N == 0
    assert v.numerator == parse_poly("x", ctx.ring)
