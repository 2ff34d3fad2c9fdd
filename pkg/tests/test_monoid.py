import pytest
from hypothesis import given, settings, strategies as st

from logbs.monoid import (
    MonoidError,
    MonoidIdeal,
    ideal_contains,
    localize,
    log_stratum,
    membership,
    minimal_generators,
    power,
    scaled,
)


def test_minimal_generators_drop_dominated_vectors():
    K = minimal_generators([(1, 1), (2, 0), (3, 0), (2, 2)])
    assert set(K.generators) == {(2, 0), (1, 1)}


def test_zero_vector_and_bad_lengths_rejected():
    with pytest.raises(MonoidError):
        MonoidIdeal(2, [(0, 0)])
    with pytest.raises(MonoidError):
        MonoidIdeal(2, [(1, 0, 0)])
    with pytest.raises(MonoidError):
        MonoidIdeal(1, [(-1,)])


def test_membership_is_upward_closed():
    K = minimal_generators([(1, 1)])
    assert membership(K, (1, 1))
    assert membership(K, (3, 7))
    assert not membership(K, (0, 5))


def test_power_and_scaled():
    K = minimal_generators([(1, 0), (0, 1)])
    assert set(power(K, 2).generators) == {(2, 0), (1, 1), (0, 2)}
    assert set(scaled(K, 2).generators) == {(2, 0), (0, 2)}
    assert ideal_contains(scaled(K, 2), power(K, 2)) is False
    assert ideal_contains(power(K, 2), scaled(K, 2))


def test_localization_examples():
    K = minimal_generators([(1, 1)])
    L = localize(K, (1, 0))
    assert L.complement == (1,)
    assert L.generators == ((1,),)
    assert not L.is_unit
    assert localize(minimal_generators([(1, 0)]), (1, 0)).is_unit
    # localizing twice composes
    K3 = minimal_generators([(1, 1, 0), (0, 0, 2)])
    assert localize(localize(K3, (1, 0, 0)), (0, 1, 0)).generators == localize(K3, (1, 1, 0)).generators


def test_log_stratum():
    S = log_stratum([1], 3)
    assert S.rank == 1 and S.codimension == 1
    assert S.divisor == (0, 2)
    with pytest.raises(MonoidError):
        log_stratum([3], 3)


vec = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any)
gens = st.lists(vec, min_size=1, max_size=4)


@settings(max_examples=100, deadline=None)
@given(gens, st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_membership_matches_definition(vs, v):
    K = minimal_generators(vs)
    expected = any(all(a >= b for a, b in zip(v, g)) for g in vs)
    assert membership(K, v) == expected


@settings(max_examples=100, deadline=None)
@given(gens)
def test_square_generators_are_pairwise_sums(vs):
    K = minimal_generators(vs)
    P = power(K, 2)
    for g in P.generators:
        assert any(tuple(x + y for x, y in zip(u, w)) == g for u in K.generators for w in K.generators)
    assert ideal_contains(K, P)


@settings(max_examples=60, deadline=None)
@given(gens)
def test_generators_are_an_antichain(vs):
    K = minimal_generators(vs)
    for u in K.generators:
        for w in K.generators:
            if u != w:
                assert not all(a >= b for a, b in zip(u, w))
