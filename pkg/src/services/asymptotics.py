#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
점근 계층 - 상수, v_n, G_n, ε 임계값, 곡면 경계식, 축약 보조정리의 전수 검증

무리 상수(√2, √3, e^{3/2})는 유리수 구간으로 감싼다. 구간의 끝점은
방향성 반올림(하한은 내림, 상한은 올림)으로 2^-bits 격자에 맞춘다.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Sequence, Tuple, Union

from src.models.weil_data import PrimePower
from src.services.modpoly import (
    count_irreducible,
    count_linear_times_irreducible,
    enumerate_monic,
    factor_degree_pattern,
)
from src.services.numth import first_primes, is_prime, r_function
from src.services.surd import SurdValue
from src.utils.async_worker import run_partitioned
from src.utils.exceptions import InvalidDegree, InvalidEpsilon, NotAPrimePower, TooLarge
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Rational = Union[int, Fraction]

REDUCTION_LIMIT = 10 ** 7
SURFACE_THRESHOLD_NUMERATOR = 659


# ---------------------------------------------------------------------------
# 구간 산술
# ---------------------------------------------------------------------------

def _round_down(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


def _round_up(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(x * scale), scale)


@dataclass(frozen=True)
class Interval:
    """닫힌 유리수 구간 [lo, hi]"""
    lo: Fraction
    hi: Fraction
    bits: int = 64

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"잘못된 구간: [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Rational, bits: int = 64) -> 'Interval':
        v = Fraction(value)
        return cls(v, v, bits)

    def _outward(self, lo: Fraction, hi: Fraction) -> 'Interval':
        return Interval(_round_down(lo, self.bits), _round_up(hi, self.bits), self.bits)

    def _coerce(self, other) -> 'Interval':
        if isinstance(other, Interval):
            return other
        return Interval.exact(other, self.bits)

    def __add__(self, other) -> 'Interval':
        other = self._coerce(other)
        return self._outward(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> 'Interval':
        return Interval(-self.hi, -self.lo, self.bits)

    def __sub__(self, other) -> 'Interval':
        return self + (-self._coerce(other))

    def __mul__(self, other) -> 'Interval':
        other = self._coerce(other)
        products = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return self._outward(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'Interval':
        other = self._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("0을 포함하는 구간으로 나눌 수 없습니다.")
        quotients = [a / b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return self._outward(min(quotients), max(quotients))

    def __rtruediv__(self, other) -> 'Interval':
        return self._coerce(other) / self

    def __pow__(self, k: int) -> 'Interval':
        if k < 0:
            return Interval.exact(1, self.bits) / (self ** (-k))
        result = Interval.exact(1, self.bits)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_list(self) -> List[str]:
        return [str(self.lo), str(self.hi)]


def sqrt_interval(x: Union[Rational, Interval], bits: int = 64) -> Interval:
    """√x 를 감싸는 구간 (정수 제곱근 기반)"""
    lo, hi = (x.lo, x.hi) if isinstance(x, Interval) else (Fraction(x), Fraction(x))
    if lo < 0:
        raise ValueError("음수의 제곱근은 지원하지 않습니다.")
    scale = 1 << bits
    lower = Fraction(math.isqrt(math.floor(lo * scale * scale)), scale)
    upper = Fraction(math.isqrt(math.ceil(hi * scale * scale)) + 1, scale)
    return Interval(lower, upper, bits)


def exp_interval(x: Rational, bits: int = 64) -> Interval:
    """e^x (0 <= x) 를 감싸는 구간 - 테일러 합과 꼬리 상한"""
    x = Fraction(x)
    if x < 0:
        raise ValueError("음수 지수는 지원하지 않습니다.")
    eps = Fraction(1, 1 << (bits + 2))
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    while True:
        total += term
        k += 1
        term = term * x / k
        # 남은 항의 합 <= term / (1 - x/(k+1))
        if k + 1 > 2 * x:
            tail = term * 2
            if tail < eps:
                break
    return Interval(_round_down(total, bits), _round_up(total + tail, bits), bits)


# ---------------------------------------------------------------------------
# 상수
# ---------------------------------------------------------------------------

def v_n(n: int) -> Fraction:
    """v_n = (2^n / n!) Π_{j=1}^{n} (2j/(2j-1))^(n+1-j)"""
    if n < 1:
        raise InvalidDegree("n >= 1 이어야 합니다.", n=n)
    value = Fraction(2 ** n, math.factorial(n))
    for j in range(1, n + 1):
        value *= Fraction(2 * j, 2 * j - 1) ** (n + 1 - j)
    return value


def _constants_at(n: int, bits: int) -> Tuple[Interval, Interval, Interval, Interval]:
    sqrt2 = sqrt_interval(2, bits)
    sqrt3 = sqrt_interval(3, bits)
    c1 = sqrt3 / 6
    c2 = exp_interval(Fraction(3, 2), bits) * 2 * (sqrt2 + 1) * sqrt3 * (sqrt3 / 162 + 1) ** 3 / 3
    c3 = c2 / (sqrt2 + 1)
    weight = Fraction(6 ** (n * n) * n * (n + 1), math.factorial(n - 1)) / v_n(n)
    g_n = c1 ** n * c3 * weight
    return c1, c2, c3, g_n


def constants_and_G(n: int, precision: Rational = Fraction(1, 10 ** 9)) -> Dict[str, Interval]:
    """
    c1, c2, c3, G_n 의 구간 포함

    c1..c3 는 절대 폭, G_n 은 상대 폭(폭 <= precision · 하한)이 precision 이하가 되도록
    비트 수를 늘려 가며 다시 계산한다.
    """
    if n < 1:
        raise InvalidDegree("n >= 1 이어야 합니다.", n=n)
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision 은 양수여야 합니다.")

    bits = 64
    while True:
        c1, c2, c3, g_n = _constants_at(n, bits)
        if (max(c1.width, c2.width, c3.width) <= precision
                and g_n.width <= precision * g_n.lo):
            break
        bits *= 2
    logger.debug(f"상수 구간 계산 완료: n={n}, bits={bits}")
    return {"c1": c1, "c2": c2, "c3": c3, "G_n": g_n}


# ---------------------------------------------------------------------------
# 임계값
# ---------------------------------------------------------------------------

def _validate_epsilon(epsilon: Rational) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise InvalidEpsilon(f"ε 는 (0, 1] 구간이어야 합니다: {eps}", epsilon=str(eps))
    return eps


def k_threshold(n: int, epsilon: Rational) -> int:
    """(1 - 1/(2n))^k <= ε/8 를 만족하는 최소 양의 정수 k"""
    eps = _validate_epsilon(epsilon)
    base, top = 2 * n - 1, 2 * n
    k = 1
    # (2n-1)^k · 8 · den <= num · (2n)^k
    while base ** k * 8 * eps.denominator > eps.numerator * top ** k:
        k += 1
    return k


def thresholds(n: int, epsilon: Rational,
               precision: Rational = Fraction(1, 10 ** 9)) -> Dict[str, object]:
    """
    (k_{n,ε}, m_{n,ε}, M_{n,ε})

    M 은 G_n 구간의 상한으로 계산한 상한값 (q > M 가드에 안전한 방향).
    """
    if n < 2:
        raise InvalidDegree("n > 1 이어야 합니다.", n=n)
    eps = _validate_epsilon(epsilon)
    k = k_threshold(n, eps)
    m = reduce(lambda acc, p: acc * p, first_primes(k), 1)
    g_n = constants_and_G(n, precision)["G_n"]
    big_m = (8 * g_n.hi * m / eps) ** 2
    return {"k": k, "m": m, "M": big_m, "G_n": g_n}


# ---------------------------------------------------------------------------
# 경계식
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundExpression:
    """α · r(q) · q^{3/2} + β · q + γ · q^{1/2}"""
    alpha: Fraction
    beta: int
    gamma: int

    def evaluate(self, q: PrimePower) -> SurdValue:
        """Q(√q) 원소로 정확히 평가"""
        r = r_function(q)
        return SurdValue(self.beta * q.q, self.alpha * r * q.q + self.gamma, radicand=q.q)

    def coefficients(self) -> Dict[str, str]:
        return {"alpha": str(self.alpha), "beta": str(self.beta), "gamma": str(self.gamma)}


LEADING = Fraction(32, 3)

I_UPPER = BoundExpression(LEADING, 3473, 8359)
ORDINARY_LOWER = BoundExpression(LEADING, 0, -8359)
O_SIMPLE_LOWER = BoundExpression(LEADING, -8, -8361)
O_ABS_SIMPLE_LOWER = BoundExpression(LEADING, -12, -8376)
I_UPPER_LARGE_Q = BoundExpression(LEADING, 3486, 0)
O_ABS_SIMPLE_LOWER_LARGE_Q = BoundExpression(LEADING, -25, 0)


def surface_bounds(q: PrimePower) -> Dict[str, SurdValue]:
    """곡면 경계식 세 개를 q 에서 정확히 평가"""
    return {
        "I_upper": I_UPPER.evaluate(q),
        "O_simple_lower": O_SIMPLE_LOWER.evaluate(q),
        "O_abs_simple_lower": O_ABS_SIMPLE_LOWER.evaluate(q),
    }


def surface_threshold(epsilon: Rational) -> Fraction:
    """q > (659/ε)² 이면 S(F_q, 2) > 1 - ε"""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise InvalidEpsilon("ε 는 양수여야 합니다.", epsilon=str(eps))
    return (SURFACE_THRESHOLD_NUMERATOR / eps) ** 2


def sqrt_lower(value: int, digits: int = 12) -> Fraction:
    """√value 의 유리수 하한 (10^-digits 격자)"""
    scale = 10 ** digits
    return Fraction(math.isqrt(value * scale * scale), scale)


def sqrt_upper(value: int, digits: int = 12) -> Fraction:
    scale = 10 ** digits
    root = math.isqrt(value * scale * scale)
    return Fraction(root if root * root == value * scale * scale else root + 1, scale)


def surd_rational_bounds(value: SurdValue, digits: int = 12) -> Tuple[Fraction, Fraction]:
    """u + v√r 를 감싸는 유리수 [하한, 상한]"""
    lo_root, hi_root = sqrt_lower(value.radicand, digits), sqrt_upper(value.radicand, digits)
    if value.v >= 0:
        return value.u + value.v * lo_root, value.u + value.v * hi_root
    return value.u + value.v * hi_root, value.u + value.v * lo_root


def higher_dimension_bounds(n: int, q: PrimePower, epsilon: Rational,
                            precision: Rational = Fraction(1, 10 ** 9)) -> Dict[str, object]:
    """
    n 차원 명제 수준 경계값 (q > M_{n,ε} 일 때 성립)

    isogeny 류 개수 상한 (1 + ε/8) v_n r(q) q^{n(n+1)/4},
    절대 단순 통상 류 하한 (1 - 7ε/8) v_n r(q) q^{n(n+1)/4},
    가설 (1) 을 어기는 다항식 수 상한 4 q^{n/2} + 1.
    """
    if n < 3:
        raise InvalidDegree("n > 2 이어야 합니다.", n=n)
    eps = _validate_epsilon(epsilon)
    limits = thresholds(n, eps, precision)
    main = SurdValue.sqrt_power(n * (n + 1) // 2, radicand=q.q) * (v_n(n) * r_function(q))
    return {
        "isogeny_upper": main * (1 + eps / 8),
        "abs_simple_lower": main * (1 - 7 * eps / 8),
        "hypothesis1_failures": SurdValue.sqrt_power(n, radicand=q.q) * 4 + 1,
        "applies": q.q > limits["M"],
        "thresholds": limits,
    }


# ---------------------------------------------------------------------------
# 축약 보조정리 전수 검증
# ---------------------------------------------------------------------------

def _pattern_classes(p: int, n: int) -> Dict[Tuple[int, ...], Tuple[bool, bool]]:
    """계수 튜플 -> (기약, 일차×기약)"""
    table = {}
    for f in enumerate_monic(p, n):
        pattern = factor_degree_pattern(f, p)
        key = tuple(f.coeff(i) for i in range(n))
        table[key] = (pattern.is_irreducible(), pattern.is_linear_times_irreducible())
    return table


def _reduction_partition(job: Tuple[int, Tuple[int, ...], int]) -> int:
    """x^(n-1) 계수를 top 으로 고정한 분할에서 두 조건을 만족하는 다항식 수"""
    n, primes, top = job
    m = reduce(lambda acc, p: acc * p, primes, 1)
    tables = {p: _pattern_classes(p, n) for p in primes}
    count = 0
    for g in enumerate_monic(m, n, leading=top):
        coeffs = [g.coeff(i) for i in range(n)]
        has_a = has_b = False
        for p in primes:
            irreducible, linear_times = tables[p][tuple(c % p for c in coeffs)]
            has_a = has_a or irreducible
            has_b = has_b or linear_times
        if has_a and has_b:
            count += 1
    return count


def reduction_formula(n: int, primes: Sequence[int]) -> int:
    """m^n - Π(p^n - #A) - Π(p^n - #B) + Π(p^n - #A - #B)"""
    m = reduce(lambda acc, p: acc * p, primes, 1)
    no_a = no_b = neither = 1
    for p in primes:
        a, b = count_irreducible(p, n), count_linear_times_irreducible(p, n)
        no_a *= p ** n - a
        no_b *= p ** n - b
        neither *= p ** n - a - b
    return m ** n - no_a - no_b + neither


def reduction_verify(n: int, primes: Sequence[int], jobs: int = 1) -> Dict[str, object]:
    """
    Z/mZ (m = Π primes) 위 모닉 차수 n 다항식 전수 열거

    어떤 p1 에서 기약이고 어떤 p2 에서 일차×기약인 다항식 수를 세어
    CRT 곱 공식, 소수별 실패 확률 상한, 포함-배제 하한과 비교한다.

    Raises:
        TooLarge: m^n > 10^7
    """
    if n <= 2:
        raise InvalidDegree("n > 2 이어야 합니다.", n=n)
    primes = list(primes)
    if not primes or len(set(primes)) != len(primes) or not all(is_prime(p) for p in primes):
        raise NotAPrimePower("서로 다른 소수 목록이 필요합니다.", primes=primes)
    m = reduce(lambda acc, p: acc * p, primes, 1)
    total = m ** n
    if total > REDUCTION_LIMIT:
        raise TooLarge(f"m^n = {total} 이 전수 열거 한도 {REDUCTION_LIMIT} 를 넘습니다.", m=m, n=n)

    logger.info(f"축약 검증 시작: n={n}, primes={primes}, m^n={total}")
    jobs_list = [(n, tuple(primes), top) for top in range(m)]
    exhaustive = sum(run_partitioned(_reduction_partition, jobs_list, jobs))
    formula = reduction_formula(n, primes)

    per_prime = []
    prob_no_a = prob_no_b = Fraction(1)
    for p in primes:
        a, b = count_irreducible(p, n), count_linear_times_irreducible(p, n)
        fail_a = 1 - Fraction(a, p ** n)
        fail_b = 1 - Fraction(b, p ** n)
        prob_no_a *= fail_a
        prob_no_b *= fail_b
        per_prime.append({
            "p": p,
            "count_irreducible": a,
            "count_linear_times_irreducible": b,
            "fail_irreducible": fail_a,
            "fail_linear_times_irreducible": fail_b,
            "fail_irreducible_bound_ok": fail_a <= 1 - Fraction(1, 2 * n),
            "fail_linear_times_irreducible_bound_ok": fail_b <= 1 - Fraction(1, 2 * n - 2),
        })

    k = len(primes)
    inclusion_exclusion = 1 - prob_no_a - prob_no_b
    guaranteed = 1 - (1 - Fraction(1, 2 * n)) ** k - (1 - Fraction(1, 2 * n - 2)) ** k
    fraction = Fraction(exhaustive, total)
    return {
        "n": n,
        "primes": primes,
        "m": m,
        "total": total,
        "exhaustive_count": exhaustive,
        "formula_count": formula,
        "formula_matches": exhaustive == formula,
        "per_prime": per_prime,
        "inclusion_exclusion_lower": inclusion_exclusion,
        "guaranteed_lower": guaranteed,
        "fraction": fraction,
        "bounds_hold": fraction >= inclusion_exclusion and fraction >= guaranteed,
    }
