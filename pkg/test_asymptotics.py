#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
점근 계층 테스트 - 구간 상수, 임계값, 경계식, 축약 보조정리 검증
"""

import math
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.services import asymptotics  # noqa: E402
from src.services.numth import parse_prime_power  # noqa: E402
from src.services.surd import SurdValue  # noqa: E402
from src.utils.exceptions import InvalidDegree, InvalidEpsilon, NotAPrimePower, TooLarge  # noqa: E402


def test_v_n_values():
    assert asymptotics.v_n(1) == Fraction(4)
    assert asymptotics.v_n(2) == Fraction(32, 3)
    assert asymptotics.v_n(3) == Fraction(1024, 45)
    with pytest.raises(InvalidDegree):
        asymptotics.v_n(0)


def test_constants_intervals():
    constants = asymptotics.constants_and_G(2)
    expected = {"c1": 0.288675, "c2": 12.898608, "c3": 5.342778}
    for name, value in expected.items():
        interval = constants[name]
        assert interval.width <= Fraction(1, 10 ** 9)
        assert abs(float(interval.midpoint) - value) < 1e-6
    assert not constants["c1"].lo <= Fraction(288675, 10 ** 6) <= constants["c1"].hi
    assert constants["c1"].lo ** 2 * 12 <= 1 <= constants["c1"].hi ** 2 * 12


def test_constants_contain_float_values():
    c = asymptotics.constants_and_G(3, Fraction(1, 10 ** 12))
    c1 = math.sqrt(3) / 6
    c2 = math.exp(1.5) * 2 * (math.sqrt(2) + 1) * math.sqrt(3) * (math.sqrt(3) / 162 + 1) ** 3 / 3
    assert abs(float(c["c1"].midpoint) - c1) < 1e-12
    assert abs(float(c["c2"].midpoint) - c2) < 1e-9
    assert abs(float(c["c3"].midpoint) - c2 / (math.sqrt(2) + 1)) < 1e-9
    g = c["G_n"]
    assert g.width <= g.lo / 10 ** 12


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=1000))
def test_sqrt_interval_encloses(value):
    interval = asymptotics.sqrt_interval(value, bits=32)
    assert interval.lo ** 2 <= value <= interval.hi ** 2


def test_exp_interval():
    interval = asymptotics.exp_interval(Fraction(3, 2))
    assert Fraction(448168907, 10 ** 8) < interval.lo < interval.hi < Fraction(448168908, 10 ** 8)
    assert interval.width < Fraction(1, 2 ** 60)


def test_k_threshold():
    assert asymptotics.k_threshold(3, 1) == 12
    assert asymptotics.k_threshold(2, 1) == 8
    for n in (2, 3, 5):
        for eps in (Fraction(1), Fraction(1, 10), Fraction(1, 1000)):
            k = asymptotics.k_threshold(n, eps)
            ratio = Fraction(2 * n - 1, 2 * n)
            assert ratio ** k <= eps / 8
            assert k == 1 or ratio ** (k - 1) > eps / 8


def test_thresholds_primorial():
    limits = asymptotics.thresholds(3, 1)
    assert limits["k"] == 12
    assert limits["m"] == 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37
    g_n = limits["G_n"]
    assert limits["M"] == (8 * g_n.hi * limits["m"]) ** 2


@pytest.mark.parametrize("eps", [0, -1, Fraction(3, 2)])
def test_thresholds_reject_bad_epsilon(eps):
    with pytest.raises(InvalidEpsilon):
        asymptotics.thresholds(3, eps)


def test_surface_threshold():
    assert asymptotics.surface_threshold(1) == 659 ** 2
    assert asymptotics.surface_threshold(Fraction(1, 10)) == 6590 ** 2
    with pytest.raises(InvalidEpsilon):
        asymptotics.surface_threshold(0)


def test_surface_bounds_exact():
    q = parse_prime_power(7)
    bounds = asymptotics.surface_bounds(q)
    # (32/3)(6/7) 7 √7 + 3473·7 + 8359 √7
    assert bounds["I_upper"] == SurdValue(3473 * 7, Fraction(32, 3) * 6 + 8359, 7)
    assert bounds["O_simple_lower"] < 0
    big = parse_prime_power(2 ** 40)
    assert asymptotics.surface_bounds(big)["O_abs_simple_lower"] > 0


def test_surd_rational_bounds():
    lo, hi = asymptotics.surd_rational_bounds(SurdValue(1, -3, 2))
    # 값 = 1 - 3√2 이므로 √2 = (1 - 값) / 3
    assert ((1 - lo) / 3) ** 2 >= 2 >= ((1 - hi) / 3) ** 2
    assert hi - lo <= Fraction(3 * 2, 10 ** 12)
    assert asymptotics.sqrt_lower(49) == asymptotics.sqrt_upper(49) == 7


def test_higher_dimension_bounds():
    q = parse_prime_power(3)
    report = asymptotics.higher_dimension_bounds(3, q, Fraction(1, 2))
    assert report["applies"] is False
    assert report["abs_simple_lower"] < report["isogeny_upper"]
    # 4 q^{3/2} + 1
    assert report["hypothesis1_failures"] == SurdValue(1, 12, 3)
    with pytest.raises(InvalidDegree):
        asymptotics.higher_dimension_bounds(2, q, 1)


def test_reduction_formula_known_value():
    assert asymptotics.reduction_formula(3, [2, 3]) == 34


@pytest.mark.parametrize("n, primes", [(3, [2, 3]), (4, [2, 3]), (3, [2, 5]), (3, [2, 3, 5]), (5, [2, 3])])
def test_reduction_verify_exhaustive(n, primes):
    result = asymptotics.reduction_verify(n, primes)
    assert result["formula_matches"]
    assert result["bounds_hold"]
    assert all(row["fail_irreducible_bound_ok"] for row in result["per_prime"])
    assert all(row["fail_linear_times_irreducible_bound_ok"] for row in result["per_prime"])


def test_reduction_verify_parallel_is_identical():
    assert asymptotics.reduction_verify(4, [2, 3], jobs=3) == asymptotics.reduction_verify(4, [2, 3])


def test_reduction_verify_rejects():
    with pytest.raises(InvalidDegree):
        asymptotics.reduction_verify(2, [2, 3])
    with pytest.raises(NotAPrimePower):
        asymptotics.reduction_verify(3, [2, 4])
    with pytest.raises(NotAPrimePower):
        asymptotics.reduction_verify(3, [3, 3])
    with pytest.raises(TooLarge):
        asymptotics.reduction_verify(12, [2, 3, 5])
