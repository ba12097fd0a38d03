#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
구성 파이프라인 - 임의의 (n, q) 에 대한 절대 단순 통상 Weil 다항식

변형 Chebyshev 다항식 T_i, Robinson 근 위치 조건, 작은 n 용 고정 표,
mod 2 / mod 3 기저 다항식 탐색, CRT 계수 결정, 상수항 보정.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.models.reports import ConstructionReport
from src.models.weil_data import PrimePower
from src.services.chebyshev_tables import MOD_2_AND_3, SMALL_GOOD
from src.services.intpoly import IntPoly
from src.services.modpoly import ResiduePoly, factor_degree_pattern, is_irreducible_mod_p
from src.services.numth import crt_pair, parse_prime_power
from src.services.surd import SurdValue
from src.services.weilcore import (
    absolute_simplicity,
    hypothesis_flags,
    is_real_weil,
    lemma_hypotheses,
    real_to_weil,
)
from src.utils.async_worker import WorkerType, run_partitioned
from src.utils.cache_manager import CacheManager
from src.utils.exceptions import HypothesisFailed, InternalError, InvalidDegree, SearchExhausted
from src.utils.logger import setup_logger
from src.utils.performance_monitor import track_performance

logger = setup_logger(__name__)

TOP_MATCHED = 6
FIRST_FREE_INDEX = 7
SMALL_RANGE = range(3, 10)
PAIR_RANGE = range(10, 19)
HYPOTHESIS_KEYS = ("h1", "h2", "h3", "h4", "h5")
HYPOTHESIS_PRIMES = (2, 3)
_Q_TWO = PrimePower(q=2, p=2, e=1)


# ---------------------------------------------------------------------------
# 변형 Chebyshev 다항식
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _chebyshev_raw(i: int) -> IntPoly:
    """T̃_0 = 2, T_1 = x, T_{i+1} = x·T_i - 2·T_{i-1}"""
    if i == 0:
        return IntPoly([2])
    if i == 1:
        return IntPoly.x()
    return IntPoly.x() * _chebyshev_raw(i - 1) - _chebyshev_raw(i - 2) * 2


def chebyshev_T(i: int) -> IntPoly:
    """
    기저로 쓰는 T_i (T_0 = 1, i >= 1 은 2·2^{i/2}·t_i(x/2^{3/2}))

    Raises:
        InvalidDegree: i < 0
    """
    if i < 0:
        raise InvalidDegree("i >= 0 이어야 합니다.", i=i)
    if i == 0:
        return IntPoly([1])
    return _chebyshev_raw(i)


def chebyshev_T_formula(i: int) -> IntPoly:
    """
    정의식 2·2^{i/2}·t_i(x/2^{3/2}) 의 직접 전개 (Q(√2) 에서 정확히)

    t_i(y) = (i/2) Σ_k (-1)^k (i-k-1)! / (k!(i-2k)!) (2y)^{i-2k}
    """
    if i < 0:
        raise InvalidDegree("i >= 0 이어야 합니다.", i=i)
    if i == 0:
        return IntPoly([2])
    scale = SurdValue.sqrt_power(i) * 2
    inner = SurdValue.sqrt_power(-3) * 2
    coeffs = [0] * (i + 1)
    for k in range(i // 2 + 1):
        t_coeff = Fraction(i, 2) * (-1) ** k * Fraction(
            math.factorial(i - k - 1), math.factorial(k) * math.factorial(i - 2 * k)
        )
        value = scale * (inner ** (i - 2 * k)) * t_coeff
        if value.v != 0 or value.u.denominator != 1:
            raise InternalError(f"T_{i} 의 x^{i - 2 * k} 계수가 정수가 아닙니다: {value}")
        coeffs[i - 2 * k] = int(value.u)
    return IntPoly(coeffs)


def robinson_check(weights: Sequence[int]) -> bool:
    """
    a_7..a_n 에 대해 Σ_{i=7}^{n-1} |a_i|/2^{i/2} + (1/2)|a_n|/2^{n/2} < 1 (정확)

    성립하면 T_n + Σ a_i T_{n-i} 의 근은 모두 실수이고 (-2√2, 2√2) 안에 있다.
    """
    weights = list(weights)
    if not weights:
        return True
    n = FIRST_FREE_INDEX + len(weights) - 1
    total = SurdValue(0)
    for offset, a in enumerate(weights):
        i = FIRST_FREE_INDEX + offset
        term = SurdValue.sqrt_power(-i) * abs(a)
        total = total + (term / 2 if i == n else term)
    return total < 1


def top_coefficients(poly, n: int) -> List[int]:
    """x^{n-1}..x^{n-6} 계수"""
    return [poly.coeff(n - k) for k in range(1, TOP_MATCHED + 1)]


def chebyshev_top_residues(n: int, p: int) -> List[int]:
    return [c % p for c in top_coefficients(chebyshev_T(n), n)]


# ---------------------------------------------------------------------------
# 좋은 다항식 조건
# ---------------------------------------------------------------------------

def good_polynomial_conditions(g: IntPoly, q: PrimePower) -> Dict[str, bool]:
    """
    차수 n > 2 인 g 의 다섯 조건

    cond1: x^{n-1} 계수가 0 이고, x^{n-2} 계수 c 가 -2n 이거나 n 의 배수가 아님
    cond2: 근이 모두 실수이고 |근| < 2√2
    cond3: g(0) 이 q 와 서로소
    cond4: g mod 2 가 기약
    cond5: g mod 3 이 일차 × 기약
    """
    n = g.degree
    if not g.is_monic() or n <= 2:
        raise InvalidDegree("모닉이고 차수 n > 2 인 g 가 필요합니다.", degree=n)
    c = g.coeff(n - 2)
    return {
        "cond1": g.coeff(n - 1) == 0 and (c == -2 * n or c % n != 0),
        "cond2": is_real_weil(g, _Q_TWO, strict=True),
        "cond3": math.gcd(g.coeff(0), q.q) == 1,
        "cond4": factor_degree_pattern(ResiduePoly.reduce(g, 2), 2).is_irreducible(),
        "cond5": factor_degree_pattern(ResiduePoly.reduce(g, 3), 3).is_linear_times_irreducible(),
    }


def small_good_polynomial(n: int) -> IntPoly:
    if n not in SMALL_GOOD:
        raise InvalidDegree("고정 표는 3 <= n <= 9 만 포함합니다.", n=n)
    return IntPoly.from_string(SMALL_GOOD[n])


def small_good_conditions(n: int, q: PrimePower) -> Dict[str, bool]:
    return good_polynomial_conditions(small_good_polynomial(n), q)


def base_pair_conditions(n: int, g2: ResiduePoly, g3: ResiduePoly) -> Dict[str, bool]:
    """(g2, g3) 가 만족해야 할 조건"""
    return {
        "g2_irreducible": g2.degree == n and g2.is_monic() and is_irreducible_mod_p(g2),
        "g3_linear_times_irreducible": (
            g3.degree == n and g3.is_monic()
            and factor_degree_pattern(g3, 3).is_linear_times_irreducible()
        ),
        "g3_nonzero_constant": g3.coeff(0) != 0,
        "g2_top_match": top_coefficients(g2, n) == chebyshev_top_residues(n, 2),
        "g3_top_match": top_coefficients(g3, n) == chebyshev_top_residues(n, 3),
    }


def mod_pair(n: int) -> Tuple[ResiduePoly, ResiduePoly]:
    if n not in MOD_2_AND_3:
        raise InvalidDegree("mod 2/3 표는 10 <= n <= 18 만 포함합니다.", n=n)
    g2_text, g3_text = MOD_2_AND_3[n]
    return ResiduePoly.parse(g2_text, 2), ResiduePoly.parse(g3_text, 3)


def mod_pair_conditions(n: int) -> Dict[str, bool]:
    g2, g3 = mod_pair(n)
    return base_pair_conditions(n, g2, g3)


@lru_cache(maxsize=None)
def _verified_small(n: int) -> IntPoly:
    g = small_good_polynomial(n)
    failed = [k for k, ok in small_good_conditions(n, _Q_TWO).items() if not ok]
    if failed:
        raise InternalError(f"고정 표 n={n} 행이 조건 {failed} 을(를) 만족하지 않습니다.")
    return g


@lru_cache(maxsize=None)
def _verified_pair(n: int) -> Tuple[ResiduePoly, ResiduePoly]:
    g2, g3 = mod_pair(n)
    failed = [k for k, ok in base_pair_conditions(n, g2, g3).items() if not ok]
    if failed:
        raise InternalError(f"mod 2/3 표 n={n} 행이 조건 {failed} 을(를) 만족하지 않습니다.")
    return g2, g3


def verify_tables(qs: Sequence[int] = (2, 3, 5, 7)) -> Dict[str, Any]:
    """두 고정 표 전체 재검증"""
    small_rows = []
    for n in SMALL_RANGE:
        for q in qs:
            conditions = small_good_conditions(n, parse_prime_power(q))
            small_rows.append({"n": n, "q": q, "g": SMALL_GOOD[n], **conditions, "ok": all(conditions.values())})
    pair_rows = []
    for n in PAIR_RANGE:
        conditions = mod_pair_conditions(n)
        g2_text, g3_text = MOD_2_AND_3[n]
        pair_rows.append({"n": n, "g2": g2_text, "g3": g3_text, **conditions, "ok": all(conditions.values())})
    return {
        "small_degrees": small_rows,
        "mod_pairs": pair_rows,
        "all_pass": all(row["ok"] for row in small_rows + pair_rows),
    }


# ---------------------------------------------------------------------------
# 기저 다항식 탐색 (n > 18)
# ---------------------------------------------------------------------------

def _free_tuples(p: int, count: int):
    """사전식 순서 (상수항이 가장 빨리 변함)"""
    return itertools.product(range(p), repeat=count)


def search_g2(n: int) -> ResiduePoly:
    """
    x^{n-1}..x^{n-6} 계수가 0 인 F_2 위 모닉 기약 다항식 중 사전식 첫 번째

    Raises:
        SearchExhausted: 해가 없음 (도달 불가)
    """
    if n < FIRST_FREE_INDEX:
        raise InvalidDegree("n >= 7 이어야 합니다.", n=n)
    top = chebyshev_top_residues(n, 2)
    head = [top[k] for k in range(TOP_MATCHED - 1, -1, -1)] + [1]  # x^{n-6}..x^n
    free = n - TOP_MATCHED
    for values in _free_tuples(2, free):
        if values[-1] == 0:
            continue
        coeffs = list(reversed(values)) + head
        candidate = ResiduePoly(coeffs, 2)
        if is_irreducible_mod_p(candidate):
            logger.debug(f"g2 탐색 완료: n={n}, {candidate.to_string()}")
            return candidate
    raise SearchExhausted(f"n={n} 의 g2 를 찾지 못했습니다.", n=n)


def search_g3(n: int) -> ResiduePoly:
    """
    g3 = (x - 1)·h, h 는 F_3 위 모닉 기약 차수 n-1, g3 의 위 여섯 계수가 T_n mod 3 과 일치

    h 의 x^{n-2}..x^{n-7} 계수는 일치 조건으로 정해지고, 나머지를 사전식으로 탐색한다.

    Raises:
        SearchExhausted: 해가 없음 (도달 불가)
    """
    if n < FIRST_FREE_INDEX + 1:
        raise InvalidDegree("n >= 8 이어야 합니다.", n=n)
    top = chebyshev_top_residues(n, 3)
    # g3 의 x^{n-k} 계수 = h_{n-k-1} - h_{n-k}
    h_top = [1]
    for k in range(1, TOP_MATCHED + 1):
        h_top.append((top[k - 1] + h_top[-1]) % 3)
    head = list(reversed(h_top))  # x^{n-7}..x^{n-1}
    linear = ResiduePoly([-1, 1], 3)
    free = n - 1 - TOP_MATCHED
    for values in _free_tuples(3, free):
        if values[-1] == 0:
            continue
        h = ResiduePoly(list(reversed(values)) + head, 3)
        if is_irreducible_mod_p(h):
            g3 = linear * h
            logger.debug(f"g3 탐색 완료: n={n}, {g3.to_string()}")
            return g3
    raise SearchExhausted(f"n={n} 의 g3 를 찾지 못했습니다.", n=n)


def _search_job(job: Tuple[str, int]) -> str:
    kind, n = job
    found = search_g2(n) if kind == "g2" else search_g3(n)
    return found.to_string()


@dataclass(frozen=True)
class BasePolynomials:
    """기저 다항식 - 고정 표의 g 또는 (g2, g3)"""
    n: int
    source: str
    g: Optional[IntPoly] = None
    g2: Optional[ResiduePoly] = None
    g3: Optional[ResiduePoly] = None


@track_performance("base_polynomials")
def base_polynomials(n: int, cache: Optional[CacheManager] = None, jobs: int = 1) -> BasePolynomials:
    """
    n <= 9 는 고정 표의 g, 10 <= n <= 18 은 고정 (g2, g3), n > 18 은 탐색 (캐시 사용)

    Args:
        n: 차수 (>= 3)
        cache: 탐색 결과 캐시
        jobs: 2 이상이면 g2/g3 탐색을 스레드 두 개로 동시에 실행
    """
    if n < 3:
        raise InvalidDegree("n >= 3 이어야 합니다.", n=n)
    if n in SMALL_RANGE:
        return BasePolynomials(n=n, source="table", g=_verified_small(n))
    if n in PAIR_RANGE:
        g2, g3 = _verified_pair(n)
        return BasePolynomials(n=n, source="table", g2=g2, g3=g3)

    cached = cache.get(n) if cache is not None else None
    if cached is not None:
        g2, g3 = ResiduePoly.parse(cached[0], 2), ResiduePoly.parse(cached[1], 3)
        if all(base_pair_conditions(n, g2, g3).values()):
            return BasePolynomials(n=n, source="cache", g2=g2, g3=g3)
        logger.warning(f"캐시 항목 n={n} 이 조건을 만족하지 않아 다시 탐색합니다.")

    logger.info(f"기저 다항식 탐색: n={n}")
    g2_text, g3_text = run_partitioned(_search_job, [("g2", n), ("g3", n)], min(jobs, 2),
                                       worker_type=WorkerType.THREAD)
    g2, g3 = ResiduePoly.parse(g2_text, 2), ResiduePoly.parse(g3_text, 3)
    if cache is not None:
        cache.set(n, g2_text, g3_text)
    return BasePolynomials(n=n, source="search", g2=g2, g3=g3)


# ---------------------------------------------------------------------------
# CRT 결합과 조립
# ---------------------------------------------------------------------------

def crt_digit(r2: int, r3: int) -> int:
    """r2 (mod 2), r3 (mod 3) 에 해당하는 {-2, ..., 3} 의 대표값"""
    value, _ = crt_pair(r2 % 2, 2, r3 % 3, 3)
    return value - 6 if value > 3 else value


def adjust_constant(a_n: int) -> int:
    """a_n ± 6 중 [-6, 6] 안의 값 (a_n = 0 이면 +6)"""
    return a_n - 6 if a_n > 0 else a_n + 6


def assemble_g(n: int, g2: ResiduePoly, g3: ResiduePoly, q: PrimePower) -> Tuple[List[int], IntPoly]:
    """
    g = T_n + a_7 T_{n-7} + ... + a_n T_0 가 g2 (mod 2), g3 (mod 3) 로 환원되도록 a_i 결정

    a_i 는 x^{n-i} 계수만으로 정해진다 (삼각 구조). 상수항이 q 와 서로소가 아니면
    a_n 을 ±6 보정한다.

    Returns:
        (a_7..a_n, g)
    """
    if n < 10:
        raise InvalidDegree("조립은 n >= 10 에서만 사용합니다.", n=n)
    if g2.modulus != 2 or g3.modulus != 3 or g2.degree != n or g3.degree != n:
        raise ValueError("g2 는 F_2, g3 는 F_3 위 차수 n 다항식이어야 합니다.")
    if (top_coefficients(g2, n) != chebyshev_top_residues(n, 2)
            or top_coefficients(g3, n) != chebyshev_top_residues(n, 3)):
        raise ValueError("g2, g3 의 위 여섯 계수가 T_n 과 일치하지 않습니다.")

    g = chebyshev_T(n)
    weights: List[int] = []
    for i in range(FIRST_FREE_INDEX, n + 1):
        degree = n - i
        current = g.coeff(degree)
        a_i = crt_digit(g2.coeff(degree) - current, g3.coeff(degree) - current)
        weights.append(a_i)
        if a_i:
            g = g + chebyshev_T(degree) * a_i

    if math.gcd(g.coeff(0), q.q) != 1:
        old = weights[-1]
        weights[-1] = adjust_constant(old)
        g = g + (weights[-1] - old)
        logger.debug(f"상수항 보정: a_n {old} -> {weights[-1]}")

    if (ResiduePoly.reduce(g, 2) != g2 or ResiduePoly.reduce(g, 3) != g3
            or math.gcd(g.coeff(0), q.q) != 1 or g.coeff(n - 2) != -2 * n
            or not is_real_weil(g, _Q_TWO, strict=True)):
        raise InternalError(f"조립된 g 가 사후 조건을 만족하지 않습니다 (n={n}, q={q.q}).")
    return weights, g


# ---------------------------------------------------------------------------
# 전체 구성
# ---------------------------------------------------------------------------

def surface_example(q: PrimePower) -> IntPoly:
    """x^4 + x^3 + x^2 + q x + q^2"""
    return IntPoly([q.q * q.q, q.q, 1, 1, 1])


def _check_flags(flags: Dict[str, Any]) -> None:
    for index, key in enumerate(HYPOTHESIS_KEYS, 1):
        if not flags[key]:
            raise HypothesisFailed(index)


@track_performance("construct_absolutely_simple")
def construct_absolutely_simple(
    n: int,
    q: PrimePower,
    cache: Optional[CacheManager] = None,
    jobs: int = 1
) -> ConstructionReport:
    """
    차원 n, 유한체 F_q 위 절대 단순 통상 isogeny 류의 Weil 다항식 구성

    n = 2 는 x^4 + x^3 + x^2 + qx + q^2, 3 <= n <= 9 는 고정 표, n >= 10 은 조립 파이프라인.
    n > 2 는 다섯 가설을 정확히 검증하고, n = 2 의 가설 플래그는 보고용이다.
    모든 경우 절대 단순성 판정을 실행한다.

    Raises:
        InvalidDegree: n < 2
        HypothesisFailed: 가설 (k) 불성립 (도달 불가)
    """
    if n < 2:
        raise InvalidDegree("n >= 2 이어야 합니다.", n=n)

    g2 = g3 = None
    weights: List[int] = []
    robinson = None
    if n == 2:
        source = "surface"
        g = IntPoly([1 - 2 * q.q, 1, 1])
        flags = hypothesis_flags(g, q)
    else:
        base = base_polynomials(n, cache=cache, jobs=jobs)
        if base.g is not None:
            source, g = "table", base.g
        else:
            source = "pipeline"
            g2, g3 = base.g2, base.g3
            weights, g = assemble_g(n, g2, g3, q)
            robinson = robinson_check(weights)
        flags = lemma_hypotheses(g, q, primes=HYPOTHESIS_PRIMES)
        _check_flags(flags)

    f = real_to_weil(g, q)
    if n == 2 and f != surface_example(q):
        raise InternalError("n = 2 구성 다항식이 기대값과 다릅니다.")
    verdict = absolute_simplicity(f, q)
    if not verdict.is_absolutely_simple:
        raise InternalError(f"구성 결과가 절대 단순이 아닙니다: {verdict.to_dict()}")

    logger.info(f"구성 완료: n={n}, q={q.q}, source={source}")
    return ConstructionReport(
        n=n,
        q=q.q,
        source=source,
        g2=g2,
        g3=g3,
        a_coeffs=weights,
        robinson=robinson,
        g=g,
        f=f,
        hypothesis_flags={key: flags[key] for key in HYPOTHESIS_KEYS},
        hypothesis_primes={"p1": flags["p1"], "p2": flags["p2"]},
        verdict=verdict,
    )
