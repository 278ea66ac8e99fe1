"""Character-ring arithmetic against naive reference implementations."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redpairs import (
    BasePDigits,
    FormalCharacter,
    RankMismatchError,
    digits,
    is_prime,
    require_prime,
)
from redpairs.charlat import _convolve_rank1_packed


def naive_product(xs, ys):
    out = {}
    for wx, cx in xs.items():
        for wy, cy in ys.items():
            w = wx + wy
            out[w] = out.get(w, 0) + cx * cy
    return {w: c for w, c in out.items() if c}


rank1_terms = st.dictionaries(
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=-(10**6), max_value=10**6).filter(bool),
    max_size=12,
)


@given(rank1_terms, rank1_terms, rank1_terms)
@settings(max_examples=120, deadline=None)
def test_ring_laws_rank1(a, b, c):
    x, y, z = FormalCharacter(1, a), FormalCharacter(1, b), FormalCharacter(1, c)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x - x == FormalCharacter.zero(1)
    assert x * FormalCharacter.unit(1) == x


@given(rank1_terms, rank1_terms)
@settings(max_examples=120, deadline=None)
def test_product_matches_naive(a, b):
    got = FormalCharacter(1, a) * FormalCharacter(1, b)
    assert dict(got.items()) == naive_product(a, b)


@given(rank1_terms, rank1_terms)
@settings(max_examples=120, deadline=None)
def test_packed_convolution_agrees(a, b):
    if not a or not b:
        return
    packed = _convolve_rank1_packed(a, b)
    assert packed is not None
    assert packed == naive_product(a, b)


def test_packed_convolution_huge_coefficients_fall_back():
    big = 10**40
    x = {0: big, 1: -big}
    assert _convolve_rank1_packed(x, x) is None
    # the public product must still be exact through the naive kernel
    c = FormalCharacter(1, x)
    sq = c * c
    assert sq.coefficient(0) == big * big
    assert sq.coefficient(1) == -2 * big * big
    assert sq.coefficient(2) == big * big


def test_scalar_and_negation():
    x = FormalCharacter(1, {3: 2, -3: 2, 0: 1})
    assert 3 * x == x + x + x
    assert -x == -1 * x
    assert 0 * x == FormalCharacter.zero(1)


@given(rank1_terms, st.integers(min_value=0, max_value=3))
@settings(max_examples=60, deadline=None)
def test_frobenius_twist_is_ring_map(a, i):
    p = 5
    x = FormalCharacter(1, a)
    y = FormalCharacter(1, {w: -c for w, c in a.items()})
    assert (x * y).frobenius_twist(p, i) == x.frobenius_twist(p, i) * y.frobenius_twist(p, i)
    assert (x + y).frobenius_twist(p, i) == x.frobenius_twist(p, i) + y.frobenius_twist(p, i)
    assert x.frobenius_twist(p, 0) == x


@given(rank1_terms)
@settings(max_examples=60, deadline=None)
def test_dual_is_involution(a):
    x = FormalCharacter(1, a)
    assert x.dual().dual() == x
    assert x.dual().dimension() == x.dimension()


def test_rank2_product():
    x = FormalCharacter(2, {(1, 0): 1, (-1, 1): 1, (0, -1): 1})
    sq = x * x
    assert sq.dimension() == 9
    assert sq.coefficient((2, 0)) == 1
    assert sq.coefficient((0, 1)) == 2
    with pytest.raises(RankMismatchError):
        x * FormalCharacter(1, {0: 1})
    with pytest.raises(RankMismatchError):
        x + FormalCharacter(1, {0: 1})


def test_weight_validation():
    with pytest.raises(TypeError):
        FormalCharacter(1, {(0, 0): 1})
    with pytest.raises(TypeError):
        FormalCharacter(2, {0: 1})
    with pytest.raises(ValueError):
        FormalCharacter(3, {})
    with pytest.raises(TypeError):
        FormalCharacter(1, {0: 1.5})


def test_json_roundtrip_is_canonical():
    x = FormalCharacter(2, {(1, 0): 2, (-1, 1): 1, (0, -1): 3})
    d = x.to_json_dict()
    assert d["terms"] == sorted(d["terms"])
    assert FormalCharacter.from_json_dict(d) == x
    again = FormalCharacter.from_json_dict(json.loads(json.dumps(d)))
    assert again.to_json_dict() == d
    y = FormalCharacter(1, {-2: 1, 2: 1})
    assert FormalCharacter.from_json_dict(y.to_json_dict()) == y
    with pytest.raises(ValueError):
        FormalCharacter.from_json_dict({"rank": 1, "terms": [[[0, 0], 1]]})
    with pytest.raises(ValueError):
        FormalCharacter.from_json_dict({"rank": 4, "terms": []})
    with pytest.raises(ValueError):
        FormalCharacter.from_json_dict({"rank": 1, "terms": "nope"})


def test_digits_and_primes():
    assert digits(5, 0).digits == (0,)
    assert digits(5, 0).value == 0
    assert digits(5, 26).digits == (1, 0, 1)
    assert digits(2, 6).digits == (0, 1, 1)
    assert BasePDigits(5, (1, 0, 1)).value == 26
    assert digits(7, 300).lead_index == 0
    assert digits(3, 9).lead_index == 2
    assert digits(5, 0).lead_index is None
    with pytest.raises(ValueError):
        digits(1, 3)
    with pytest.raises(ValueError):
        digits(5, -2)
    with pytest.raises(ValueError):
        BasePDigits(5, (1, 0))
    with pytest.raises(ValueError):
        BasePDigits(5, (5,))
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    require_prime(97)
    with pytest.raises(ValueError):
        require_prime(91)
