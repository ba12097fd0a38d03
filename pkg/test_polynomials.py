#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
정수 / 잉여 다항식 연산과 Q(√r) 산술 테스트

sympy 를 독립 판정 기준으로 사용한다.
"""

import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, Symbol, real_roots
from sympy import factor_list as sympy_factor_list

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.services.intpoly import (  # noqa: E402
    IntPoly,
    from_power_sums,
    is_irreducible_over_rationals,
    is_squarefree,
    poly_gcd,
    power_charpoly,
    power_sums,
    squarefree_part,
    sturm_count,
)
from src.services.modpoly import (  # noqa: E402
    FactorPattern,
    ResiduePoly,
    count_irreducible,
    count_linear_times_irreducible,
    enumerate_monic,
    factor_degree_pattern,
    is_irreducible_mod_p,
    pattern_census,
)
from src.services.surd import SurdValue  # noqa: E402
from src.utils.exceptions import NotMonic, NotSquarefree, PolynomialParseError  # noqa: E402

x = Symbol('x')


def to_sympy(f: IntPoly) -> Poly:
    return Poly(list(reversed(f.coeffs)), x, domain='ZZ')


monic_polys = st.lists(st.integers(min_value=-6, max_value=6), min_size=1, max_size=6).map(
    lambda low: IntPoly(low + [1])
)


# ---------------------------------------------------------------------------
# IntPoly
# ---------------------------------------------------------------------------

def test_parse_and_format():
    f = IntPoly.from_string("49, 7, 1, 1, 1")
    assert f.coeffs == (49, 7, 1, 1, 1)
    assert f.degree == 4
    assert f.to_string() == "49,7,1,1,1"
    assert f.is_monic()
    assert IntPoly().to_string() == "0"


@pytest.mark.parametrize("text", ["", "1,,2", "1,a", "1,2,0"])
def test_parse_rejects(text):
    with pytest.raises(PolynomialParseError):
        IntPoly.from_string(text)


def test_arithmetic():
    a = IntPoly([1, 1])
    b = IntPoly([-1, 1])
    assert a * b == IntPoly([-1, 0, 1])
    assert (a ** 3).coeffs == (1, 3, 3, 1)
    assert a - a == IntPoly()
    quot, rem = divmod(IntPoly([-1, 0, 1]), b)
    assert quot == a and rem.is_zero()
    assert IntPoly([1, 2, 3]).reflect() == IntPoly([1, -2, 3])
    assert IntPoly([5, 0, 1])(3) == 14


def test_gcd_and_squarefree():
    f = IntPoly([-1, 1]) ** 2 * IntPoly([2, 0, 1])
    g = IntPoly([-1, 1]) * IntPoly([3, 1])
    assert poly_gcd(f, g) == IntPoly([-1, 1])
    assert not is_squarefree(f)
    assert squarefree_part(f) == IntPoly([-1, 1]) * IntPoly([2, 0, 1])


@settings(max_examples=60, deadline=None)
@given(monic_polys)
def test_sturm_count_matches_sympy(f):
    sf = squarefree_part(f)
    expected = len(set(real_roots(to_sympy(sf))))
    assert sturm_count(sf) == expected


def test_sturm_count_interval():
    # (x-1)(x-2)(x-3): (1, 3] 에는 2, 3
    f = IntPoly([-1, 1]) * IntPoly([-2, 1]) * IntPoly([-3, 1])
    assert sturm_count(f) == 3
    assert sturm_count(f, 1, 3) == 2
    assert sturm_count(f, Fraction(3, 2), Fraction(5, 2)) == 1
    with pytest.raises(NotSquarefree):
        sturm_count(IntPoly([-1, 1]) ** 2)


@settings(max_examples=60, deadline=None)
@given(monic_polys)
def test_power_sums_round_trip(f):
    sums = power_sums(f, f.degree)
    assert from_power_sums(sums, f.degree) == f


def test_power_charpoly():
    # 근 ±i 의 제곱은 -1 (중복 2)
    assert power_charpoly(IntPoly([1, 0, 1]), 2) == IntPoly([1, 2, 1])
    # 근 1, 2 의 세제곱은 1, 8
    f = IntPoly([-1, 1]) * IntPoly([-2, 1])
    assert power_charpoly(f, 3) == IntPoly([-1, 1]) * IntPoly([-8, 1])
    with pytest.raises(NotMonic):
        power_charpoly(IntPoly([1, 2]), 2)


@settings(max_examples=80, deadline=None)
@given(monic_polys)
def test_irreducibility_matches_sympy(f):
    if f.degree < 1 or f.coeff(0) == 0:
        return
    _, factors = sympy_factor_list(to_sympy(f))
    expected = len(factors) == 1 and factors[0][1] == 1
    assert is_irreducible_over_rationals(f) == expected


def test_irreducibility_known_cases():
    # x^4 + 1 은 모든 소수에서 가약이지만 Q 위 기약
    assert is_irreducible_over_rationals(IntPoly([1, 0, 0, 0, 1]))
    assert not is_irreducible_over_rationals(IntPoly([4, 0, 0, 0, 1]))  # (x^2+2x+2)(x^2-2x+2)
    assert is_irreducible_over_rationals(IntPoly([4, 2, 1, 1, 1]))


# ---------------------------------------------------------------------------
# ResiduePoly
# ---------------------------------------------------------------------------

def test_residue_parse_and_reduce():
    f = ResiduePoly.parse("1,1,0,1 mod 2")
    assert f.modulus == 2 and f.coeffs == (1, 1, 0, 1)
    assert ResiduePoly.parse("2,1", 3).coeffs == (2, 1)
    assert ResiduePoly.reduce(IntPoly([-1, 4, 1]), 3).coeffs == (2, 1, 1)
    with pytest.raises(PolynomialParseError):
        ResiduePoly.parse("1,1")


@pytest.mark.parametrize("p, n", [(2, 1), (2, 5), (2, 8), (3, 4), (5, 3), (7, 2)])
def test_count_irreducible_matches_enumeration(p, n):
    enumerated = sum(1 for f in enumerate_monic(p, n) if is_irreducible_mod_p(f))
    assert count_irreducible(p, n) == enumerated


@pytest.mark.parametrize("p, n", [(2, 2), (2, 4), (3, 3), (5, 2), (3, 4)])
def test_count_linear_times_irreducible(p, n):
    enumerated = sum(
        1 for f in enumerate_monic(p, n)
        if factor_degree_pattern(f, p).is_linear_times_irreducible()
    )
    assert count_linear_times_irreducible(p, n) == enumerated
    if n == 2:
        assert enumerated == p * (p + 1) // 2


def test_count_lower_bounds():
    for p in (2, 3, 5):
        for n in range(1, 9):
            assert Fraction(count_irreducible(p, n)) >= Fraction(p ** n, 2 * n)
        for n in range(2, 9):
            assert Fraction(count_linear_times_irreducible(p, n)) >= Fraction(p ** n, 2 * n - 2)


def test_factor_degree_pattern_with_multiplicity():
    # (x+1)^2 (x^2+x+1) mod 2
    f = ResiduePoly([1, 1], 2) ** 2 * ResiduePoly([1, 1, 1], 2)
    assert factor_degree_pattern(f, 2) == FactorPattern.of([1, 1, 2])
    # x^4 + x^2 = x^2 (x+1)^2 mod 2 는 도함수가 0 인 경우를 거친다
    g = ResiduePoly([0, 0, 1, 0, 1], 2)
    assert factor_degree_pattern(g, 2) == FactorPattern.of([1, 1, 1, 1])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), monic_polys, monic_polys)
def test_factor_pattern_is_multiplicative(p, f, g):
    if f.degree < 1 or g.degree < 1:
        return
    a, b = ResiduePoly.reduce(f, p), ResiduePoly.reduce(g, p)
    expected = factor_degree_pattern(a, p).union(factor_degree_pattern(b, p))
    assert factor_degree_pattern(a * b, p) == expected
    assert expected.total_degree == f.degree + g.degree


@pytest.mark.parametrize("p, n", [(2, 6), (3, 4), (5, 3)])
def test_pattern_census_against_sympy(p, n):
    census = pattern_census(p, n)
    assert sum(census.values()) == p ** n
    expected: Counter = Counter()
    for f in enumerate_monic(p, n):
        _, factors = Poly(list(reversed(f.coeffs)), x, modulus=p).factor_list()
        degrees = []
        for factor, mult in factors:
            degrees.extend([factor.degree()] * mult)
        expected[FactorPattern.of(degrees)] += 1
    assert census == dict(expected)


# ---------------------------------------------------------------------------
# SurdValue
# ---------------------------------------------------------------------------

def test_surd_arithmetic_and_sign():
    s2 = SurdValue(0, 1)
    assert s2 * s2 == 2
    assert SurdValue.sqrt_power(3) == SurdValue(0, 2)
    assert SurdValue.sqrt_power(-2) == Fraction(1, 2)
    assert SurdValue(3, -2).sign() == 1        # 3 - 2√2 > 0
    assert SurdValue(-3, 2).sign() == -1
    assert SurdValue(1, 1) > SurdValue(2, 0)   # 1 + √2 > 2
    assert (SurdValue(1, 1) / SurdValue(1, 1)) == 1


def test_crt_components():
    f = ResiduePoly([5, 4, 1], 6)
    parts = f.crt_components()
    assert parts == {2: ResiduePoly([1, 0, 1], 2), 3: ResiduePoly([2, 1, 1], 3)}
    with pytest.raises(ValueError):
        ResiduePoly([1, 1], 12).crt_components()
