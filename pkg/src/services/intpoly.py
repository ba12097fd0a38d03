#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
정수 계수 다항식의 정확 연산

Sturm 근 개수, 무제곱 부분, 근 거듭제곱 변환(뉴턴 항등식), 유리수체 위 기약성 판정.
부동소수점은 어떤 판정 경로에도 쓰지 않는다.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from src.utils.exceptions import InternalError, NotMonic, NotSquarefree, PolynomialParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Number = Union[int, Fraction]


class IntPoly:
    """
    정수 계수 다항식 (불변)

    coeffs[i] 는 x^i 의 계수. 최고차 계수는 0이 아니며 영다항식은 빈 튜플.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = [int(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, key, value):
        raise AttributeError("IntPoly 는 불변입니다.")

    # ---- 생성 ----
    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> 'IntPoly':
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> 'IntPoly':
        return cls([0, 1])

    @classmethod
    def from_string(cls, text: str) -> 'IntPoly':
        """오름차순 쉼표 구분 계수 문자열 파싱 ("49,7,1,1,1")"""
        parts = [part.strip() for part in text.strip().split(",")]
        if not parts or any(part == "" for part in parts):
            raise PolynomialParseError(f"계수 문자열이 비어 있습니다: {text!r}", text=text)
        try:
            values = [int(part) for part in parts]
        except ValueError:
            raise PolynomialParseError(f"정수가 아닌 계수가 있습니다: {text!r}", text=text)
        if values[-1] == 0:
            raise PolynomialParseError("최고차 계수를 명시해야 합니다 (마지막 계수가 0).", text=text)
        return cls(values)

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    # ---- 기본 성질 ----
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self) -> 'IntPoly':
        """내용으로 나누고 최고차 계수를 양수로"""
        if self.is_zero():
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPoly(v // c for v in self.coeffs)

    def derivative(self) -> 'IntPoly':
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def reflect(self) -> 'IntPoly':
        """f(-x)"""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # ---- 연산 ----
    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly([{self.to_string()}])"

    def __neg__(self) -> 'IntPoly':
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: Union['IntPoly', int]) -> 'IntPoly':
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: Union['IntPoly', int]) -> 'IntPoly':
        return self + (-_as_poly(other))

    def __rsub__(self, other: Union['IntPoly', int]) -> 'IntPoly':
        return _as_poly(other) - self

    def __mul__(self, other: Union['IntPoly', int]) -> 'IntPoly':
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'IntPoly':
        result = IntPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> 'IntPoly':
        """x^k 곱하기"""
        return IntPoly([0] * k + list(self.coeffs)) if self.coeffs else self

    def __divmod__(self, other: 'IntPoly') -> Tuple['IntPoly', 'IntPoly']:
        """최고차 계수가 ±1 인 제수에 대한 정수 나눗셈"""
        if other.leading not in (1, -1):
            raise NotMonic("정수 나눗셈은 최고차 계수 ±1 인 제수만 지원합니다.")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        lc = other.leading
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * lc
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return IntPoly(quot), IntPoly(rem[:dq] if dq > 0 else [])


def _as_poly(value: Union[IntPoly, int]) -> IntPoly:
    return value if isinstance(value, IntPoly) else IntPoly([value])


# ---------------------------------------------------------------------------
# 유클리드 계열
# ---------------------------------------------------------------------------

def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b (정수 연산)"""
    if b.is_zero():
        raise ZeroDivisionError("영다항식으로 나눌 수 없습니다.")
    rem = list(a.coeffs)
    db, lc = b.degree, b.leading
    delta = a.degree - db
    if delta < 0:
        return a
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        rem = [v * lc for v in rem]
        if c:
            for j, bj in enumerate(b.coeffs):
                rem[k - db + j] -= c * bj
        rem.pop()
    # 반복 횟수가 delta+1 이므로 lc 거듭제곱이 정확히 맞는다
    return IntPoly(rem)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """정수 계수 최대공약수 (원시 PRS, 최고차 계수 양수)"""
    if a.is_zero():
        return b.primitive_part() * abs(b.content()) if not b.is_zero() else b
    if b.is_zero():
        return a.primitive_part() * abs(a.content())
    cont = math.gcd(a.content(), b.content())
    u, v = a.primitive_part(), b.primitive_part()
    if u.degree < v.degree:
        u, v = v, u
    while not v.is_zero():
        r = pseudo_remainder(u, v)
        u, v = v, (r.primitive_part() if not r.is_zero() else r)
    return u.primitive_part() * cont


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    """b | a 일 때 a / b (유리수 연산 후 정수성 확인)"""
    rem = [Fraction(c) for c in a.coeffs]
    db, lc = b.degree, b.leading
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] / lc
        if c:
            quot[k - db] = c
            for j, bj in enumerate(b.coeffs):
                rem[k - db + j] -= c * bj
    if any(rem[:db]) or any(q.denominator != 1 for q in quot):
        raise InternalError("나누어떨어지지 않는 다항식 나눗셈")
    return IntPoly(int(q) for q in quot)


def squarefree_part(f: IntPoly) -> IntPoly:
    """
    f / gcd(f, f') 의 원시 부분 (최고차 계수 양수)

    f 와 같은 서로 다른 복소근을 각각 중복도 1로 갖는다.
    """
    if f.is_zero():
        raise ValueError("영다항식의 무제곱 부분은 정의되지 않습니다.")
    if f.degree == 0:
        return IntPoly([1])
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.primitive_part()
    return exact_quotient(f.primitive_part(), g.primitive_part()).primitive_part()


def is_squarefree(f: IntPoly, probe_primes: Sequence[int] = (1009, 10007, 100003)) -> bool:
    """
    무제곱 여부

    어떤 소수 p 에서 f mod p 가 차수를 유지하며 무제곱이면 f 도 무제곱이다.
    모듈러 판정이 실패하면 정확한 gcd 로 확인한다.
    """
    if f.degree <= 1:
        return True
    from src.services.modpoly import ResiduePoly

    for p in probe_primes:
        if f.leading % p == 0:
            continue
        fp = ResiduePoly.reduce(f, p)
        if fp.gcd(fp.derivative()).degree == 0:
            return True
    return poly_gcd(f, f.derivative()).degree == 0


# ---------------------------------------------------------------------------
# Sturm 열
# ---------------------------------------------------------------------------

def sturm_sequence(g: IntPoly) -> List[IntPoly]:
    """원시 부분 축약을 거친 Sturm 열"""
    chain = [g, g.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = pseudo_remainder(a, b)
        if r.is_zero():
            break
        # prem 은 lc(b)^(δ+1) 배이므로 그 부호를 보정한 뒤 -rem 을 취한다
        delta = a.degree - b.degree
        sign = -1 if (b.leading < 0 and (delta + 1) % 2 == 1) else 1
        r = r * (-sign)
        c = r.content()
        chain.append(IntPoly(v // c for v in r.coeffs))
    return chain


def _sign(v: Number) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Iterable[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(nonzero, nonzero[1:]) if s != t)


def _signs_at(chain: Sequence[IntPoly], x: Optional[Number], at_plus_infinity: bool) -> List[int]:
    if x is None:
        if at_plus_infinity:
            return [_sign(p.leading) for p in chain]
        return [_sign(p.leading) * (-1 if p.degree % 2 else 1) for p in chain]
    return [_sign(p(x)) for p in chain]


def sturm_count(g: IntPoly, lo: Optional[Number] = None, hi: Optional[Number] = None) -> int:
    """
    (lo, hi] 구간의 서로 다른 실근 개수

    Args:
        g: 무제곱 정수 다항식
        lo: 하한 (None 이면 -∞)
        hi: 상한 (None 이면 +∞)

    Raises:
        NotSquarefree: gcd(g, g') 가 상수가 아님
    """
    if g.is_zero():
        raise ValueError("영다항식의 근은 셀 수 없습니다.")
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("lo < hi 이어야 합니다.")
    if g.degree == 0:
        return 0
    chain = sturm_sequence(g)
    if chain[-1].degree > 0:
        raise NotSquarefree("Sturm 열의 마지막 항이 상수가 아닙니다 (무제곱 아님).", poly=g.to_string())
    v_lo = _variations(_signs_at(chain, lo, at_plus_infinity=False))
    v_hi = _variations(_signs_at(chain, hi, at_plus_infinity=True))
    return v_lo - v_hi


# ---------------------------------------------------------------------------
# 뉴턴 항등식
# ---------------------------------------------------------------------------

def power_sums(f: IntPoly, k: int) -> List[int]:
    """모닉 f 의 근의 거듭제곱 합 p_1..p_k"""
    if not f.is_monic():
        raise NotMonic("거듭제곱 합은 모닉 다항식에만 정의합니다.")
    m = f.degree
    # a[i] = x^(m-i) 의 계수
    a = [f.coeff(m - i) for i in range(m + 1)]
    sums = [0] * (k + 1)
    for j in range(1, k + 1):
        acc = j * a[j] if j <= m else 0
        for i in range(1, min(j - 1, m) + 1):
            acc += a[i] * sums[j - i]
        sums[j] = -acc
    return sums[1:]


def from_power_sums(sums: Sequence[int], m: int) -> IntPoly:
    """거듭제곱 합 p_1..p_m 에서 모닉 차수 m 다항식 복원 (정수성 확인)"""
    if len(sums) < m:
        raise ValueError("거듭제곱 합이 부족합니다.")
    a = [1] + [0] * m
    for j in range(1, m + 1):
        acc = sums[j - 1]
        for i in range(1, j):
            acc += a[i] * sums[j - i - 1]
        q, r = divmod(-acc, j)
        if r:
            raise InternalError(f"뉴턴 항등식 복원 중 정수가 아닌 계수 (j={j})")
        a[j] = q
    return IntPoly(reversed(a))


def power_charpoly(f: IntPoly, d: int) -> IntPoly:
    """
    근을 d 제곱한 다항식

    모닉 차수 m 다항식 f 의 근 {r} 에 대해 근의 중복집합이 {r^d} 인 모닉 다항식.
    뉴턴 거듭제곱 합 p_d, p_2d, ..., p_md 를 역변환한다.
    """
    if d < 1:
        raise ValueError("d >= 1 이어야 합니다.")
    if not f.is_monic():
        raise NotMonic("power_charpoly 는 모닉 다항식이 필요합니다.", poly=f.to_string())
    if d == 1:
        return f
    m = f.degree
    return power_charpoly_from_sums(power_sums(f, d * m), m, d)


def power_charpoly_from_sums(sums: Sequence[int], m: int, d: int) -> IntPoly:
    """미리 계산한 거듭제곱 합 p_1..p_K (K >= d·m) 에서 power_charpoly(f, d)"""
    if len(sums) < d * m:
        raise ValueError(f"거듭제곱 합이 부족합니다: {len(sums)} < {d * m}")
    return from_power_sums([sums[d * k - 1] for k in range(1, m + 1)], m)


# ---------------------------------------------------------------------------
# 기약성
# ---------------------------------------------------------------------------

def _subset_sums(pattern: Sequence[int]) -> set:
    sums = {0}
    for deg in pattern:
        sums |= {s + deg for s in sums}
    return sums


def is_irreducible_over_rationals(
    f: IntPoly,
    prime_bound: int = 200,
    sieve_primes: int = 10
) -> bool:
    """
    유리수체 위 기약성 (정확)

    1) 어떤 소수 p 에서 f mod p 가 기약이면 참
    2) 여러 소수의 인수 차수 패턴으로 가능한 진약수 차수를 걸러 남는 것이 없으면 참
    3) 그 외에는 sympy 의 정수 계수 완전 인수분해로 확정
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("차수 1 이상의 다항식이 필요합니다.")
    f = f.primitive_part()
    n = f.degree
    if n == 1:
        return True
    if f.coeff(0) == 0:
        return False

    from src.services.modpoly import ResiduePoly, factor_degree_pattern
    from src.services.numth import primes_up_to

    candidates = set(range(1, n // 2 + 1))
    used = 0
    for p in primes_up_to(prime_bound):
        if f.leading % p == 0:
            continue
        fp = ResiduePoly.reduce(f, p).monic()
        if fp.gcd(fp.derivative()).degree > 0:
            # p 가 판별식을 나눔
            continue
        pattern = factor_degree_pattern(fp, p)
        if pattern.is_irreducible():
            return True
        candidates &= _subset_sums(pattern.degrees)
        if not candidates:
            return True
        used += 1
        if used >= sieve_primes:
            break

    logger.debug(f"차수 패턴 체로 결정 불가 (deg={n}), 정확 인수분해로 확인")
    return _irreducible_by_factorization(f)


def _irreducible_by_factorization(f: IntPoly) -> bool:
    from sympy import Poly, Symbol

    x = Symbol('x')
    poly = Poly(list(reversed(f.coeffs)), x, domain='ZZ')
    _, factors = poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1
