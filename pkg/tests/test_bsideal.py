from fractions import Fraction

import pytest

from logbs.arith import MultiPoly
from logbs.bsideal import (
    BSError,
    ann_fs,
    b_function,
    bs_ideal,
    bs_ideal_localized,
    certify,
    support_tower,
)
from logbs.frontend import parse_poly
from logbs.support import factor_linear
from logbs.weyl import TwistedElement, act_on_twisted, parse_operator
from sympy_oracle import certificate_holds

X = ("x",)
XY = ("x", "y")


def polys(texts, vars=XY):
    return [parse_poly(t, vars) for t in texts]


def expected_b(a):
    out = MultiPoly.constant(("s",), 1)
    for j in range(1, a + 1):
        out = out * (MultiPoly.var(("s",), "s") + Fraction(j, a))
    return out


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_b_function_of_monomial(a):
    assert b_function(parse_poly(f"x^{a}", X)) == expected_b(a)


def test_b_function_of_sum_of_squares():
    assert b_function(parse_poly("x^2 + y^2", XY)) == parse_poly("(s + 1)^2", ("s",))


def test_b_function_of_cusp():
    b = b_function(parse_poly("y^2 - x^3", XY))
    assert b == parse_poly("(s + 1)*(s + 5/6)*(s + 7/6)", ("s",))


def test_annihilator_generators_kill_F_s():
    for F in (polys(["x^2 + y^2"]), polys(["x", "y"]), polys(["x", "x*y"])):
        ann = ann_fs(F)
        unit = TwistedElement.unit(ann.context)
        assert ann.generators
        for g in ann.generators:
            assert act_on_twisted(g, unit).is_zero()


def test_annihilator_of_x_to_the_s():
    ann = ann_fs(polys(["x"], X))
    prof = ann.profile
    assert parse_operator("x*dx - s", prof) in ann.generators


def test_bs_ideal_of_coordinate_pair():
    res = bs_ideal(polys(["x", "y"]), [(1, 1)])
    assert res.generators == [parse_poly("(s1 + 1)*(s2 + 1)", res.svars)]
    (cert,) = res.certificates
    assert cert.verified
    assert [str(P) for P, _ in cert.witnesses] == ["dx * dy"]


def test_bs_ideal_of_repeated_function():
    res = bs_ideal(polys(["x", "x"], X), [(1, 1)])
    assert res.generators == [parse_poly("(s1 + s2 + 1)*(s1 + s2 + 2)", res.svars)]
    assert [str(P) for P, _ in res.certificates[0].witnesses] == ["dx^2"]


def test_bs_ideal_with_two_generators():
    res = bs_ideal(polys(["x", "y"]), [(1, 0), (0, 1)])
    assert sorted(map(str, res.generators)) == ["s1 + 1", "s2 + 1"]
    for cert in res.certificates:
        assert cert.verified


@pytest.mark.parametrize("F, K", [
    (["x", "y"], [(1, 1)]),
    (["x^2 + y^2"], [(1,)]),
    (["x", "x*y"], [(1, 1)]),
    (["x", "y"], [(2, 1)]),
])
def test_certificates_agree_with_sympy(F, K):
    res = bs_ideal(polys(F), K)
    for cert in res.certificates:
        assert certify(cert.generator, cert.witnesses, res.F, shift=cert.shift, svars=res.svars)
        assert certificate_holds(res.F, res.svars, cert.generator, cert.witnesses, cert.shift)


def test_wrong_certificate_is_rejected_by_both_routes():
    res = bs_ideal(polys(["x", "y"]), [(1, 1)])
    cert = res.certificates[0]
    wrong = cert.generator + 1
    assert not certify(wrong, cert.witnesses, res.F, svars=res.svars)
    assert not certificate_holds(res.F, res.svars, wrong, cert.witnesses)


def test_localized_chain():
    res = bs_ideal_localized(polys(["x", "y"]), [(1, 1)], (1, 0), W=3)
    assert res.generators == [parse_poly("s2 + 1", res.svars)]
    assert res.k_star is not None and res.k_star <= 2
    assert "heuristic-stabilization" in res.flags
    for g in res.generators:
        assert g.degree(res.svars[0]) == 0
    for step in res.chain[1:]:
        assert step.contains_previous
    for cert in res.certificates:
        assert cert.verified
        assert certificate_holds(res.F, res.svars, cert.generator, cert.witnesses, cert.shift)


def test_localization_to_unit():
    res = bs_ideal_localized(polys(["x"], X), [(1,)], (1,))
    assert res.is_unit
    assert "empty-locus" in res.flags


def test_localization_at_zero_is_the_global_ideal():
    F = polys(["x", "y"])
    assert bs_ideal_localized(F, [(1, 1)], (0, 0)).generators == bs_ideal(F, [(1, 1)]).generators


def test_bad_localization_vector():
    with pytest.raises(BSError):
        bs_ideal_localized(polys(["x", "y"]), [(1, 1)], (1,))


def test_unit_ideal_when_the_monoid_only_uses_a_unit():
    # f2 = 1 never vanishes, so K = <(0, 1)> gives the zero module
    res = bs_ideal(polys(["x", "1"], X), [(0, 1)])
    assert res.is_unit


def test_tower_of_x():
    tower = support_tower(polys(["x"], X), [(1,)], jmax=3)
    roots = [sorted(-L.constant for L, _ in factor_linear(res.generators[0])[0]) for res in tower]
    assert roots == [[-1], [-2, -1], [-3, -2, -1]]
    assert tower.coincide
    assert all([str(c) for c in lv.exp_image] == ["{l = 1}"] for lv in tower.levels)


def test_tower_modes_agree_on_plane():
    tower = support_tower(polys(["x", "y"]), [(1, 1)], jmax=2, mode="both")
    assert "tower-modes-disagree" not in tower.flags
