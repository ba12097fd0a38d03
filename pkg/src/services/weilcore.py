#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Weil 다항식 계층

실 동반 다항식과의 대응(Ω), Weil/통상 판정, Q(π^d) 의 차수,
절대 단순성 판정 절차.
"""

import math
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.weil_data import PrimePower, SimplicityVerdict
from src.services.intpoly import (
    IntPoly,
    is_irreducible_over_rationals,
    is_squarefree,
    power_charpoly,
    power_charpoly_from_sums,
    power_sums,
    squarefree_part,
    sturm_count,
)
from src.services.modpoly import ResiduePoly, factor_degree_pattern
from src.services.numth import euler_phi, primes_up_to
from src.utils.exceptions import FunctionalEquationViolated, InvalidDegree, NotIrreducible, NotMonic
from src.utils.logger import setup_logger
from src.utils.performance_monitor import track_performance

logger = setup_logger(__name__)


class WeilPoly(BaseModel):
    """Weil 다항식 후보 f (차수 2n) 와 q"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f: IntPoly = Field(..., description="모닉 짝수 차수 다항식")
    q: PrimePower = Field(..., description="유한체 크기")

    @field_validator('f')
    def validate_shape(cls, v):
        if not v.is_monic():
            raise ValueError("Weil 다항식은 모닉이어야 합니다.")
        if v.degree < 2 or v.degree % 2:
            raise ValueError("Weil 다항식의 차수는 2 이상의 짝수여야 합니다.")
        return v

    @property
    def n(self) -> int:
        return self.f.degree // 2

    def real_companion(self) -> "RealCompanion":
        return RealCompanion(g=weil_to_real(self.f, self.q), q=self.q)


class RealCompanion(BaseModel):
    """f(x) = x^n g(x + q/x) 를 만족하는 g"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: IntPoly = Field(..., description="모닉 차수 n 다항식")
    q: PrimePower = Field(..., description="유한체 크기")

    @field_validator('g')
    def validate_monic(cls, v):
        if not v.is_monic() or v.degree < 1:
            raise ValueError("실 동반 다항식은 차수 1 이상의 모닉이어야 합니다.")
        return v

    @property
    def n(self) -> int:
        return self.g.degree

    def to_weil(self) -> WeilPoly:
        return WeilPoly(f=real_to_weil(self.g, self.q), q=self.q)


# ---------------------------------------------------------------------------
# Ω 대응
# ---------------------------------------------------------------------------

def real_to_weil(g: IntPoly, q: PrimePower) -> IntPoly:
    """f(x) = x^n · g(x + q/x) = Σ c_j (x² + q)^j x^(n-j)"""
    if not g.is_monic() or g.degree < 1:
        raise NotMonic("g 는 차수 1 이상의 모닉이어야 합니다.", poly=g.to_string())
    n = g.degree
    base = IntPoly([q.q, 0, 1])
    f = IntPoly()
    power = IntPoly([1])
    for j, c in enumerate(g.coeffs):
        if c:
            f = f + (power * c).shift(n - j)
        power = power * base
    return f


def functional_equation_holds(f: IntPoly, q: PrimePower) -> bool:
    """x^(2n) f(q/x) = q^n f(x), 즉 x^i 계수 = q^(n-i) · x^(2n-i) 계수 (i <= n)"""
    if f.is_zero() or f.degree % 2:
        return False
    n = f.degree // 2
    return all(f.coeff(i) == q.q ** (n - i) * f.coeff(2 * n - i) for i in range(n + 1))


def weil_to_real(f: IntPoly, q: PrimePower) -> IntPoly:
    """
    real_to_weil 의 역

    Raises:
        FunctionalEquationViolated: 계수 대칭이 깨짐
    """
    if not f.is_monic():
        raise NotMonic("f 는 모닉이어야 합니다.", poly=f.to_string())
    if not functional_equation_holds(f, q):
        raise FunctionalEquationViolated(
            f"함수 방정식 x^2n f(q/x) = q^n f(x) 가 성립하지 않습니다 (q={q.q}).",
            poly=f.to_string(), q=q.q
        )
    n = f.degree // 2
    base = IntPoly([q.q, 0, 1])
    powers = [IntPoly([1])]
    for _ in range(n):
        powers.append(powers[-1] * base)

    # (x²+q)^j x^(n-j) 는 최고차항이 x^(n+j) 인 모닉 - 삼각 구조
    rest = f
    coeffs = [0] * (n + 1)
    for j in range(n, -1, -1):
        c = rest.coeff(n + j)
        coeffs[j] = c
        if c:
            rest = rest - (powers[j] * c).shift(n - j)
    if not rest.is_zero():
        raise FunctionalEquationViolated("실 동반 다항식으로 환원되지 않습니다.", poly=f.to_string())
    return IntPoly(coeffs)


# ---------------------------------------------------------------------------
# 판정
# ---------------------------------------------------------------------------

def squared_roots_transform(g: IntPoly) -> IntPoly:
    """G(x²) = (-1)^m g(x) g(-x) 인 모닉 G (m = deg g)"""
    h = g * g.reflect()
    if g.degree % 2:
        h = -h
    return IntPoly(h.coeffs[::2])


def is_real_weil(g: IntPoly, q: PrimePower, strict: bool = False) -> bool:
    """
    g 의 모든 근이 실수이고 [-2√q, 2√q] 에 있는지 (strict 이면 열린 구간)

    √q 를 만들지 않는다. 근의 제곱을 근으로 갖는 G 에 대해
    (4q, ∞) 구간의 근 개수를 Sturm 열로 센다.
    """
    if not g.is_monic() or g.degree < 1:
        raise NotMonic("g 는 차수 1 이상의 모닉이어야 합니다.", poly=g.to_string())
    s = squarefree_part(g)
    if sturm_count(s) != s.degree:
        return False
    big_g = squarefree_part(squared_roots_transform(s))
    bound = 4 * q.q
    if sturm_count(big_g, bound, None) != 0:
        return False
    if strict and big_g(bound) == 0:
        return False
    return True


def middle_coefficient(f: IntPoly) -> int:
    return f.coeff(f.degree // 2)


def is_ordinary_weil(f: IntPoly, q: PrimePower) -> bool:
    """Weil 다항식이면서 가운데 계수가 q 와 서로소"""
    g = weil_to_real(f, q)
    return math.gcd(middle_coefficient(f), q.q) == 1 and is_real_weil(g, q)


def candidate_exponents(n: int) -> List[int]:
    """{d > 1 : d | 2n} ∪ {d > 1 : φ(d) | 2n}, 2 <= d <= 8n²"""
    if n < 1:
        raise InvalidDegree("n >= 1 이어야 합니다.", n=n)
    two_n = 2 * n
    return [d for d in range(2, 8 * n * n + 1) if two_n % d == 0 or two_n % euler_phi(d) == 0]


def _subfield_degree(f: IntPoly, d: int, sums: Optional[List[int]] = None) -> int:
    if sums is None:
        charpoly = power_charpoly(f, d)
    else:
        charpoly = power_charpoly_from_sums(sums, f.degree, d)
    if is_squarefree(charpoly):
        return charpoly.degree
    return squarefree_part(charpoly).degree


def subfield_degree(f: IntPoly, d: int) -> int:
    """
    [Q(π^d) : Q] = deg squarefree_part(power_charpoly(f, d))

    Raises:
        NotIrreducible: f 가 유리수체 위에서 기약이 아님
    """
    if d < 1:
        raise ValueError("d >= 1 이어야 합니다.")
    if not is_irreducible_over_rationals(f):
        raise NotIrreducible("f 가 유리수체 위에서 기약이 아닙니다.", poly=f.to_string())
    return _subfield_degree(f, d)


@track_performance("absolute_simplicity")
def absolute_simplicity(f: IntPoly, q: PrimePower, ordinary: Optional[bool] = None) -> SimplicityVerdict:
    """
    절대 단순성 판정

    모든 후보 d 에서 [Q(π^d):Q] = 2n 이면 절대 단순.
    부족한 최소 d* 가 있으면 통상일 때 SplitsAtDegree(d*), 아니면 Inconclusive(d*).

    Args:
        f: 유리수체 위 기약인 Weil 다항식
        q: 유한체 크기
        ordinary: 미리 알고 있으면 전달 (None 이면 계산)
    """
    if not f.is_monic() or f.degree < 2 or f.degree % 2:
        raise InvalidDegree("f 는 짝수 차수 모닉이어야 합니다.", degree=f.degree)
    if not is_irreducible_over_rationals(f):
        raise NotIrreducible("f 가 유리수체 위에서 기약이 아닙니다.", poly=f.to_string())
    if ordinary is None:
        ordinary = is_ordinary_weil(f, q)

    n = f.degree // 2
    exponents = candidate_exponents(n)
    sums = power_sums(f, max(exponents) * f.degree)
    for d in exponents:
        degree = _subfield_degree(f, d, sums)
        if degree < 2 * n:
            logger.debug(f"d={d} 에서 차수 {degree} < {2 * n}")
            if ordinary:
                return SimplicityVerdict.splits_at(d)
            return SimplicityVerdict.inconclusive(d)
    return SimplicityVerdict.absolutely_simple()


def verdict_to_json(verdict: SimplicityVerdict) -> Dict[str, Any]:
    return verdict.to_dict()


# ---------------------------------------------------------------------------
# 좋은 다항식 보조정리의 다섯 가설
# ---------------------------------------------------------------------------

def is_trinomial_shape(f: IntPoly) -> bool:
    """f = x^(2n) + a x^n + q^n 형태인지"""
    n = f.degree // 2
    return all(f.coeff(i) == 0 for i in range(1, 2 * n) if i != n)


def _find_prime(g: IntPoly, primes: Iterable[int], predicate) -> Optional[int]:
    for p in primes:
        gp = ResiduePoly.reduce(g, p)
        if gp.degree != g.degree:
            continue
        if predicate(factor_degree_pattern(gp, p)):
            return p
    return None


def hypothesis_flags(
    g: IntPoly,
    q: PrimePower,
    primes: Optional[Iterable[int]] = None
) -> Dict[str, Any]:
    """
    모닉 g 에 대한 다섯 가설 값 (차수 제한 없음)

    h1: f 가 x^2n + a x^n + q^n 꼴이 아님
    h2: g 의 근이 모두 실수이고 |근| < 2√q
    h3: g(0) 이 q 와 서로소
    h4: 어떤 소수에서 g 가 기약
    h5: 어떤 소수에서 g 가 일차 × 기약

    Returns:
        {"h1".."h5": bool, "p1": 소수 또는 None, "p2": 소수 또는 None}
    """
    if not g.is_monic() or g.degree < 1:
        raise NotMonic("g 는 차수 1 이상의 모닉이어야 합니다.", poly=g.to_string())
    prime_list = list(primes) if primes is not None else primes_up_to(100)
    f = real_to_weil(g, q)
    p1 = _find_prime(g, prime_list, lambda pat: pat.is_irreducible())
    p2 = _find_prime(g, prime_list, lambda pat: pat.is_linear_times_irreducible())
    return {
        "h1": not is_trinomial_shape(f),
        "h2": is_real_weil(g, q, strict=True),
        "h3": math.gcd(g.coeff(0), q.q) == 1,
        "h4": p1 is not None,
        "h5": p2 is not None,
        "p1": p1,
        "p2": p2,
    }


def lemma_hypotheses(
    g: IntPoly,
    q: PrimePower,
    primes: Optional[Iterable[int]] = None
) -> Dict[str, Any]:
    """
    차수 n > 2 인 모닉 g 에 대한 다섯 가설 검사

    다섯 값이 모두 참이면 f = x^n g(x + q/x) 는 기약 통상 Weil 다항식이고
    절대 단순 isogeny 류를 준다.

    Raises:
        InvalidDegree: deg g <= 2
    """
    if g.degree <= 2:
        raise InvalidDegree("가설 검사는 차수 n > 2 에서만 정의됩니다.", degree=g.degree)
    return hypothesis_flags(g, q, primes)
