import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophant.errors import BadExponent, NotMonic, ZeroConstantTerm, ZeroPolynomialError
from diophant.intpoly import IntPoly

from oracles import peval, real_roots_isolated

D = IntPoly.from_descending


def monic(tail_max=10, deg_min=1, deg_max=8):
    return st.lists(st.integers(-tail_max, tail_max), min_size=deg_min, max_size=deg_max).map(
        lambda cs: IntPoly(cs + [1])
    )


def with_unit_constant(deg_min=3, deg_max=8):
    return st.lists(st.integers(-10, 10), min_size=deg_min - 1, max_size=deg_max - 1).map(
        lambda cs: IntPoly([1] + cs + [1])
    )


@pytest.mark.parametrize(
    "p, x, expected",
    [
        (D(1, 0, 0, 1), 2, 9),
        (D(1, -1, 0, 1), 1, 1),
        (D(1, -2, -1, 1), -1, -1),
    ],
)
def test_eval(p, x, expected):
    assert p(x) == expected


@pytest.mark.parametrize(
    "p, expected",
    [
        (D(1, -1, 0, 1), D(1, 0, -1, 1)),
        (D(1, 0, 0, 1), D(1, 0, 0, 1)),
        (D(1, -2, -1, 1), D(1, -1, -2, 1)),
    ],
)
def test_companion(p, expected):
    assert p.companion() == expected
    assert p.companion().companion() == p


def test_companion_needs_constant():
    with pytest.raises(ZeroConstantTerm):
        D(1, 0, 1, 0).companion()


@pytest.mark.parametrize("p, expected", [(D(1, 0, 0, 1), 1), (D(1, -2, -1, 1), 4), (D(1, -1, 0, 1), 2)])
def test_tail_abs_sum(p, expected):
    assert p.tail_abs_sum() == expected


def test_not_monic():
    with pytest.raises(NotMonic):
        D(2, 0, 1).tail_abs_sum()
    with pytest.raises(NotMonic):
        D(-1, 0, 0, 1).root_bound()


@pytest.mark.parametrize("p, expected", [(D(1, 0, -2, 1), 3), (D(1, 0, 0, 1), 1), (D(1, -2, -1, 1), 4)])
def test_root_bound(p, expected):
    assert p.root_bound() == expected


def test_root_bound_against_bisection():
    p = D(1, -2, -1, 1)
    roots = real_roots_isolated(list(p.coeffs), -10, 10)
    assert len(roots) == 3
    assert all(abs(r) <= p.root_bound() for r in roots)


def test_dominates_examples():
    assert D(1, 0, 0, 1).dominates(2, 3)
    # counterexample to the range |x| <= -1 + tail one might expect from the tail sum
    p = D(1, -2, 0, 1)
    assert p.tail_abs_sum() == 3
    assert not p.dominates(2, 2)
    assert p.dominates(2, 5)


def test_dominates_bad_exponent():
    with pytest.raises(BadExponent):
        D(1, 0, 0, 1).dominates(3, 10)
    with pytest.raises(BadExponent):
        D(1, 0, 0, 1).dominates(-1, 10)


@pytest.mark.parametrize(
    "p, expected",
    [
        (D(1, 0, -1, 1), True),
        (D(1, 0, 0, 1), False),
        (D(1, 5, -1, -5, 1), True),
        (D(1, -1, 0, 1), True),
        (D(1, -1, -2, 1), True),
        (D(1, -2, -1, 1), True),
    ],
)
def test_preserves_unit_values(p, expected):
    assert p.preserves_unit_values() is expected


def test_exactly_four_unit_preserving_cubics():
    found = sorted(
        (a2, a1)
        for a2 in range(-20, 21)
        for a1 in range(-20, 21)
        if IntPoly((1, a1, a2, 1)).preserves_unit_values()
    )
    # t^3-t+1, t^3-t^2+1, t^3-t^2-2t+1, t^3-2t^2-t+1
    assert found == [(-2, -1), (-1, -2), (-1, 0), (0, -1)]


def test_zero_polynomial():
    z = IntPoly([0, 0])
    assert z.is_zero() and z.coeffs == ()
    with pytest.raises(ZeroPolynomialError):
        z.degree


def test_json_round_trip():
    p = D(1, -1, 0, 1)
    assert p.to_json() == ["1", "0", "-1", "1"]
    big = IntPoly([10**30, -(10**25), 1])
    assert IntPoly.from_json(json.loads(json.dumps(big.to_json()))) == big


@given(with_unit_constant())
def test_companion_involution(p):
    assert p.companion().companion() == p
    assert p.companion().degree == p.degree


@given(st.lists(st.integers(-10, 10), min_size=2, max_size=7).filter(lambda cs: cs[0] != 0 and cs[-1] != 0))
def test_companion_involution_general(cs):
    p = IntPoly(cs)
    assert p.companion().companion() == p


@given(with_unit_constant())
def test_reversal_preserves_tail(p):
    assert p.companion().tail_abs_sum() == p.tail_abs_sum()


@settings(max_examples=60)
@given(monic(tail_max=6, deg_max=5))
def test_root_bound_integer_scan(p):
    R = p.root_bound()
    for x in range(-(R + 50), R + 51):
        if p(x) == 0:
            assert abs(x) <= R


@given(monic(), st.integers(0, 7), st.integers(1, 500), st.booleans())
def test_dominance_guarantee(p, m, offset, neg):
    m = m % p.degree
    x = 1 + p.tail_abs_sum() + offset
    assert p.dominates(m, -x if neg else x)


@given(st.lists(st.integers(-(10**20), 10**20), max_size=9), st.integers(-(10**6), 10**6))
def test_horner_matches_power_sum(cs, x):
    assert IntPoly(cs)(x) == peval(cs, x)
