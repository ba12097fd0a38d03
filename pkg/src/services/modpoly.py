#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
소수체 F_p 및 Z/mZ 위의 다항식

인수 차수 패턴(무제곱 분해 + 서로 다른 차수 분해), 기약성 판정,
기약 다항식 / 일차×기약 다항식의 정확한 개수.
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.services.intpoly import IntPoly
from src.services.numth import divisors, factorize, is_prime, moebius
from src.utils.exceptions import InternalError, InvalidDegree, NotMonic, PolynomialParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class ResiduePoly:
    """
    Z/mZ 계수 다항식 (불변)

    coeffs[i] 는 x^i 의 계수이며 [0, m) 로 정규화된다.
    나눗셈 계열 연산은 m 이 소수일 때만 유효하다.
    """

    __slots__ = ("modulus", "coeffs")

    def __init__(self, coeffs: Sequence[int], modulus: int):
        if modulus < 2:
            raise ValueError("법은 2 이상이어야 합니다.")
        values = [int(c) % modulus for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, key, value):
        raise AttributeError("ResiduePoly 는 불변입니다.")

    @classmethod
    def reduce(cls, f: IntPoly, modulus: int) -> 'ResiduePoly':
        return cls(f.coeffs, modulus)

    @classmethod
    def x(cls, modulus: int) -> 'ResiduePoly':
        return cls([0, 1], modulus)

    @classmethod
    def parse(cls, text: str, modulus: Optional[int] = None) -> 'ResiduePoly':
        """
        "1,1,0,1 mod 2" 형식 파싱

        접미사가 없으면 modulus 인자를 사용한다.
        """
        body, _, suffix = text.partition("mod")
        if suffix.strip():
            try:
                modulus = int(suffix.strip())
            except ValueError:
                raise PolynomialParseError(f"법이 정수가 아닙니다: {text!r}", text=text)
        if modulus is None:
            raise PolynomialParseError("법이 지정되지 않았습니다.", text=text)
        poly = IntPoly.from_string(body)
        return cls(poly.coeffs, modulus)

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

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _same(self, coeffs) -> 'ResiduePoly':
        return ResiduePoly(coeffs, self.modulus)

    def _check(self, other: 'ResiduePoly') -> None:
        if other.modulus != self.modulus:
            raise ValueError(f"법이 다릅니다: {self.modulus} != {other.modulus}")

    def monic(self) -> 'ResiduePoly':
        if self.is_zero():
            raise ZeroDivisionError("영다항식은 모닉으로 만들 수 없습니다.")
        inv = pow(self.leading, -1, self.modulus)
        return self._same(c * inv for c in self.coeffs)

    def derivative(self) -> 'ResiduePoly':
        return self._same([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    # ---- 연산 ----
    def __eq__(self, other) -> bool:
        if not isinstance(other, ResiduePoly):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs))

    def __repr__(self) -> str:
        return f"ResiduePoly([{self.to_string()}] mod {self.modulus})"

    def __add__(self, other: 'ResiduePoly') -> 'ResiduePoly':
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._same(self.coeff(i) + other.coeff(i) for i in range(n))

    def __sub__(self, other: 'ResiduePoly') -> 'ResiduePoly':
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._same(self.coeff(i) - other.coeff(i) for i in range(n))

    def __mul__(self, other) -> 'ResiduePoly':
        if isinstance(other, int):
            return self._same(c * other for c in self.coeffs)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self._same([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return self._same(out)

    def __pow__(self, k: int) -> 'ResiduePoly':
        result = self._same([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: 'ResiduePoly') -> Tuple['ResiduePoly', 'ResiduePoly']:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("영다항식으로 나눌 수 없습니다.")
        m = self.modulus
        inv = pow(other.leading, -1, m)
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv % m
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] = (rem[k - dq + j] - c * b) % m
        return self._same(quot), self._same(rem[:dq])

    def __floordiv__(self, other: 'ResiduePoly') -> 'ResiduePoly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'ResiduePoly') -> 'ResiduePoly':
        return divmod(self, other)[1]

    def powmod(self, e: int, modulus_poly: 'ResiduePoly') -> 'ResiduePoly':
        """self^e mod modulus_poly (반복 제곱)"""
        result = self._same([1]) % modulus_poly
        base = self % modulus_poly
        while e:
            if e & 1:
                result = (result * base) % modulus_poly
            base = (base * base) % modulus_poly
            e >>= 1
        return result

    def gcd(self, other: 'ResiduePoly') -> 'ResiduePoly':
        """모닉 최대공약수 (둘 다 0이면 0)"""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def pth_root(self) -> 'ResiduePoly':
        """f(x) = h(x)^p 인 h (도함수가 0인 경우 전용)"""
        p = self.modulus
        if any(c for i, c in enumerate(self.coeffs) if i % p):
            raise ValueError("p 제곱 형태가 아닙니다.")
        # F_p 에서 a^p = a
        return self._same(self.coeffs[::p])

    def crt_components(self) -> Dict[int, 'ResiduePoly']:
        """무제곱 합성수 법 m 에서 각 소인수 p 로의 축약"""
        factors = factorize(self.modulus)
        if any(k > 1 for k in factors.values()):
            raise ValueError(f"법 {self.modulus} 은(는) 무제곱 정수가 아닙니다.")
        return {p: ResiduePoly(self.coeffs, p) for p in sorted(factors)}


@dataclass(frozen=True)
class FactorPattern:
    """기약 인수 차수의 중복집합 (오름차순)"""
    degrees: Tuple[int, ...]

    @classmethod
    def of(cls, degrees) -> 'FactorPattern':
        return cls(tuple(sorted(degrees)))

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def is_irreducible(self) -> bool:
        return len(self.degrees) == 1

    def is_linear_times_irreducible(self) -> bool:
        """일차 인수 하나와 기약 인수 하나 (차수 n-1)"""
        return len(self.degrees) == 2 and self.degrees[0] == 1

    def union(self, other: 'FactorPattern') -> 'FactorPattern':
        return FactorPattern.of(self.degrees + other.degrees)

    def __str__(self) -> str:
        return "{" + ", ".join(str(d) for d in self.degrees) + "}"


def _require_prime_monic(f: ResiduePoly, p: int) -> None:
    if f.modulus != p:
        raise ValueError(f"다항식의 법 {f.modulus} 과(와) p={p} 가 다릅니다.")
    if not f.is_monic():
        raise NotMonic("모닉 다항식이 필요합니다.", poly=f.to_string())
    if f.degree < 1:
        raise InvalidDegree("차수 1 이상이어야 합니다.", degree=f.degree)


def squarefree_decomposition(f: ResiduePoly) -> List[Tuple[ResiduePoly, int]]:
    """
    F_p 위 무제곱 분해

    Returns:
        (인수, 중복도) 목록. 인수는 모닉 무제곱이며 서로소.
    """
    p = f.modulus
    out: List[Tuple[ResiduePoly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(h, k * p) for h, k in squarefree_decomposition(f.pth_root())]

    c = f.gcd(df)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((h, k * p) for h, k in squarefree_decomposition(c.monic().pth_root()))
    return out


def distinct_degree_factorization(f: ResiduePoly) -> List[Tuple[int, ResiduePoly]]:
    """
    무제곱 모닉 f 의 서로 다른 차수 분해

    Returns:
        (D, 차수 D 인 기약 인수들의 곱) 목록
    """
    p = f.modulus
    x = ResiduePoly.x(p)
    out: List[Tuple[int, ResiduePoly]] = []
    rest = f
    h = x % rest
    d = 1
    while rest.degree >= 2 * d:
        h = h.powmod(p, rest)
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((d, g))
            rest = rest // g
            h = h % rest
        d += 1
    if rest.degree > 0:
        out.append((rest.degree, rest))
    return out


def factor_degree_pattern(f: ResiduePoly, p: int) -> FactorPattern:
    """
    모닉 f (F_p 위) 의 기약 인수 차수 패턴 (중복도 포함)

    차수 D·k 인 서로 다른 차수 성분은 차수 D 인 인수 k 개로 기록한다.
    """
    _require_prime_monic(f, p)
    degrees: List[int] = []
    for part, mult in squarefree_decomposition(f):
        for d, component in distinct_degree_factorization(part):
            degrees.extend([d] * (component.degree // d * mult))
    pattern = FactorPattern.of(degrees)
    if pattern.total_degree != f.degree:
        raise InternalError(f"패턴 차수 합 {pattern.total_degree} != {f.degree}")
    return pattern


def is_irreducible_mod_p(f: ResiduePoly) -> bool:
    """
    F_p 위 기약성 (Ben-Or 판정)

    1 <= i <= deg/2 에 대해 gcd(x^(p^i) - x, f) = 1 이면 기약.
    """
    p = f.modulus
    if f.degree < 1:
        return False
    f = f.monic()
    if f.degree == 1:
        return True
    if f.coeff(0) == 0:
        return False
    x = ResiduePoly.x(p)
    h = x
    for _ in range(f.degree // 2):
        h = h.powmod(p, f)
        if not f.gcd(h - x).is_one():
            return False
    return True


def count_irreducible(p: int, n: int) -> int:
    """#A_{n,p} = (1/n) Σ_{d|n} μ(n/d) p^d"""
    if n < 1:
        raise InvalidDegree("n >= 1 이어야 합니다.", n=n)
    total = sum(moebius(n // d) * p ** d for d in divisors(n))
    if total % n:
        raise InternalError(f"뫼비우스 합이 n={n} 으로 나누어떨어지지 않습니다.")
    return total // n


def count_linear_times_irreducible(p: int, n: int) -> int:
    """
    #B_{n,p}: 일차 × 기약(차수 n-1) 로 인수분해되는 모닉 차수 n 다항식 개수

    n >= 3 에서는 p·#A_{n-1,p}. n = 2 는 전수 열거로 센다
    (같은 일차 인수의 제곱 x·x 도 포함).
    """
    if n < 2:
        raise InvalidDegree("n >= 2 이어야 합니다.", n=n)
    if n == 2:
        return sum(
            1 for f in enumerate_monic(p, 2)
            if factor_degree_pattern(f, p).is_linear_times_irreducible()
        )
    return p * count_irreducible(p, n - 1)


def enumerate_monic(p: int, n: int, leading: Optional[int] = None) -> Iterator[ResiduePoly]:
    """
    모닉 차수 n 다항식 전수 열거 (결정적 순서)

    Args:
        p: 법
        n: 차수
        leading: 지정하면 x^(n-1) 계수를 이 값으로 고정 (분할 열거용)
    """
    if n < 1:
        raise InvalidDegree("n >= 1 이어야 합니다.", n=n)
    top_values = range(p) if leading is None else [leading % p]
    for top in top_values:
        for rest in itertools.product(range(p), repeat=n - 1):
            yield ResiduePoly(list(reversed(rest)) + [top, 1], p)


def pattern_census(p: int, n: int) -> Dict[FactorPattern, int]:
    """모든 모닉 차수 n 다항식의 인수 패턴 분포 (합은 p^n)"""
    if not is_prime(p):
        raise ValueError(f"{p} 은(는) 소수가 아닙니다.")
    counts: Counter = Counter()
    for f in enumerate_monic(p, n):
        counts[factor_degree_pattern(f, p)] += 1
    logger.debug(f"패턴 분포 p={p}, n={n}: {len(counts)} 종류")
    return dict(counts)
