#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Weil 다항식 판정 테스트 - Ω 대응, Weil/통상 판정, 절대 단순성, 다섯 가설
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.models.weil_data import SimplicityVerdict, VerdictKind  # noqa: E402
from src.services.intpoly import IntPoly, squarefree_part  # noqa: E402
from src.services.numth import parse_prime_power  # noqa: E402
from src.services.weilcore import (  # noqa: E402
    RealCompanion,
    WeilPoly,
    absolute_simplicity,
    candidate_exponents,
    functional_equation_holds,
    hypothesis_flags,
    is_ordinary_weil,
    is_real_weil,
    lemma_hypotheses,
    real_to_weil,
    subfield_degree,
    verdict_to_json,
    weil_to_real,
)
from src.utils.exceptions import (  # noqa: E402
    FunctionalEquationViolated,
    InvalidDegree,
    NotIrreducible,
)

Q2 = parse_prime_power(2)
Q3 = parse_prime_power(3)


def test_real_to_weil_surface():
    """g = x^2 + a x + (b - 2q) ↔ x^4 + a x^3 + b x^2 + a q x + q^2"""
    g = IntPoly([-3, 1, 1])
    f = real_to_weil(g, Q2)
    assert f == IntPoly([4, 2, 1, 1, 1])
    assert functional_equation_holds(f, Q2)
    assert weil_to_real(f, Q2) == g


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=6),
       st.sampled_from([2, 3, 4, 5, 9, 49]))
def test_weil_real_correspondence(low, q):
    qp = parse_prime_power(q)
    g = IntPoly(low + [1])
    f = real_to_weil(g, qp)
    assert f.degree == 2 * g.degree
    assert functional_equation_holds(f, qp)
    assert weil_to_real(f, qp) == g


def test_weil_to_real_rejects_asymmetric():
    with pytest.raises(FunctionalEquationViolated) as info:
        weil_to_real(IntPoly([1, 1, 1, 1, 1]), Q2)
    assert info.value.code == "functional_equation_violated"


def test_models_wrap_correspondence():
    weil = WeilPoly(f=IntPoly([4, 2, 1, 1, 1]), q=Q2)
    assert weil.n == 2
    companion = weil.real_companion()
    assert isinstance(companion, RealCompanion)
    assert companion.g == IntPoly([-3, 1, 1])
    assert companion.to_weil().f == weil.f
    with pytest.raises(ValueError):
        WeilPoly(f=IntPoly([1, 1, 1, 1]), q=Q2)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(min_value=-7, max_value=7), min_size=1, max_size=5),
       st.sampled_from([2, 3, 4, 9, 16]))
def test_is_real_weil_with_integer_roots(roots, q):
    """근이 정수이면 판정은 r^2 <= 4q (열린 구간이면 r^2 < 4q) 와 같다"""
    qp = parse_prime_power(q)
    g = IntPoly([1])
    for r in roots:
        g = g * IntPoly([-r, 1])
    assert is_real_weil(g, qp) == all(r * r <= 4 * q for r in roots)
    assert is_real_weil(g, qp, strict=True) == all(r * r < 4 * q for r in roots)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=4))
def test_is_real_weil_matches_numpy(low):
    """경계에서 먼 경우 numpy 근과 비교 (q = 5)"""
    qp = parse_prime_power(5)
    g = IntPoly(low + [1])
    roots = np.roots(list(reversed(squarefree_part(g).coeffs)))
    bound = 2 * np.sqrt(5)
    imag = np.abs(roots.imag).max()
    radius = np.abs(roots.real).max()
    if 1e-6 < imag < 1e-2 or abs(radius - bound) < 1e-4:
        return
    expected = imag <= 1e-6 and radius <= bound
    assert is_real_weil(g, qp) == expected


def test_is_real_weil_complex_roots():
    assert not is_real_weil(IntPoly([1, 0, 1]), Q2)
    assert is_real_weil(IntPoly([-5, 0, 1]), Q3)
    # x - 4 의 근은 2√4 와 같다
    q4 = parse_prime_power(4)
    assert is_real_weil(IntPoly([-4, 1]), q4)
    assert not is_real_weil(IntPoly([-4, 1]), q4, strict=True)


def test_is_ordinary_weil():
    assert is_ordinary_weil(IntPoly([4, 2, 1, 1, 1]), Q2)
    assert not is_ordinary_weil(IntPoly([4, 0, 2, 0, 1]), Q2)


def test_candidate_exponents_surface():
    assert candidate_exponents(2) == [2, 3, 4, 5, 6, 8, 10, 12]
    assert all(d <= 8 * 9 for d in candidate_exponents(3))


def test_absolute_simplicity_verdicts():
    assert absolute_simplicity(IntPoly([4, 2, 1, 1, 1]), Q2) == SimplicityVerdict.absolutely_simple()
    # x^4 + x^2 + 9: π^2 가 이차 수체에 있음
    verdict = absolute_simplicity(IntPoly([9, 0, 1, 0, 1]), Q3)
    assert verdict.kind == VerdictKind.SPLITS and verdict.degree == 2
    # 통상이 아니면 결정을 보류
    verdict = absolute_simplicity(IntPoly([4, 0, 2, 0, 1]), Q2)
    assert verdict.kind == VerdictKind.INCONCLUSIVE and verdict.degree == 2


def test_absolute_simplicity_rejects_reducible():
    f = real_to_weil(IntPoly([-1, 1]) * IntPoly([1, 1]), Q2)
    with pytest.raises(NotIrreducible):
        absolute_simplicity(f, Q2)
    with pytest.raises(InvalidDegree):
        absolute_simplicity(IntPoly([1, 1, 1, 1]), Q2)


def test_subfield_degree():
    f = IntPoly([4, 2, 1, 1, 1])
    assert subfield_degree(f, 1) == 4
    assert subfield_degree(IntPoly([9, 0, 1, 0, 1]), 2) == 2


def test_hypothesis_flags_small_table_row():
    """x^3 - 5x + 1: 2 에서 기약, 3 에서 (x - 1)(x^2 + x + 2)"""
    flags = lemma_hypotheses(IntPoly([1, -5, 0, 1]), Q2)
    assert all(flags[k] for k in ("h1", "h2", "h3", "h4", "h5"))
    assert flags["p1"] == 2 and flags["p2"] == 3


def test_hypothesis_flags_failures():
    # x^3 - 9x: 근 ±3 이 2√2 밖, 상수항 0
    flags = hypothesis_flags(IntPoly([0, -9, 0, 1]), Q2, primes=[2, 3])
    assert not flags["h2"]
    assert not flags["h3"]
    # f = x^4 + 0 x^3 + ... 는 삼항식 꼴
    flags = hypothesis_flags(IntPoly([-3, 0, 1]), Q2)
    assert not flags["h1"]
    with pytest.raises(InvalidDegree):
        lemma_hypotheses(IntPoly([-3, 1, 1]), Q2)


def test_verdict_to_json():
    assert verdict_to_json(SimplicityVerdict.splits_at(3)) == {"verdict": "splits", "degree": 3}
    assert verdict_to_json(SimplicityVerdict.absolutely_simple()) == {"verdict": "abs_simple"}
