#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
초등 정수론 유틸리티 - 모든 서비스 모듈이 공유
"""

import math
import threading
from fractions import Fraction
from typing import Dict, List, Tuple

from src.models.weil_data import PrimePower
from src.utils.exceptions import NotAPrimePower, PrimeTooLarge
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PRIMALITY_LIMIT = 2 ** 64

# n < 2^64 에서 결정적인 Miller-Rabin 증인 집합
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """
    결정적 소수 판정 (n < 2^64)

    Raises:
        PrimeTooLarge: n >= 2^64
    """
    if n >= PRIMALITY_LIMIT:
        raise PrimeTooLarge(f"{n} 은(는) 2^64 이상이라 소수 판정을 지원하지 않습니다.", n=n)
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p

    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integer_root(n: int, k: int) -> int:
    """floor(n^(1/k)) 정수 계산"""
    if n < 0:
        raise ValueError("음수의 거듭제곱근은 지원하지 않습니다.")
    if n < 2 or k == 1:
        return n
    # 뉴턴 반복, 초기값은 위쪽에서 시작
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def parse_prime_power(q: int) -> PrimePower:
    """
    q = p^e 분해

    Args:
        q: 2 이상의 정수

    Returns:
        PrimePower(q, p, e)

    Raises:
        NotAPrimePower: 서로 다른 소인수가 둘 이상이거나 q < 2
    """
    if q < 2:
        raise NotAPrimePower(f"{q} 은(는) 소수 거듭제곱이 아닙니다.", q=q)

    # 큰 지수부터 시도해야 p가 소수로 나온다
    for e in range(q.bit_length(), 0, -1):
        p = integer_root(q, e)
        if p < 2 or p ** e != q:
            continue
        if is_prime(p):
            return PrimePower(q=q, p=p, e=e)
        if e > 1:
            # 합성수의 거듭제곱이면 더 작은 지수에서도 소수가 될 수 없다
            break
    raise NotAPrimePower(f"{q} 은(는) 소수 거듭제곱이 아닙니다.", q=q)


def factorize(n: int) -> Dict[int, int]:
    """시행 나눗셈 소인수분해 (작은 n 전용)"""
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def euler_phi(n: int) -> int:
    """오일러 φ 함수"""
    if n < 1:
        raise ValueError("n >= 1 이어야 합니다.")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    """뫼비우스 함수"""
    if n < 1:
        raise ValueError("n >= 1 이어야 합니다.")
    factors = factorize(n)
    if any(k > 1 for k in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> List[int]:
    """양의 약수 (오름차순)"""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# 프로세스 단위 소수 캐시 (점진적 체)
_prime_cache: List[int] = [2, 3, 5, 7, 11, 13]
_prime_lock = threading.Lock()


def _extend_primes(count: int) -> None:
    limit = _prime_cache[-1]
    while len(_prime_cache) < count:
        # 캐시된 소수가 √hi 까지 덮도록 hi <= limit^2
        lo, hi = limit + 1, min(max(2 * limit, limit + 1024), limit * limit)
        sieve = bytearray([1]) * (hi - lo + 1)
        for p in _prime_cache:
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            sieve[start - lo::p] = bytearray(len(range(start, hi + 1, p)))
        _prime_cache.extend(lo + i for i, flag in enumerate(sieve) if flag)
        limit = hi


def first_primes(k: int) -> List[int]:
    """처음 k개의 소수"""
    if k < 1:
        raise ValueError("k >= 1 이어야 합니다.")
    with _prime_lock:
        if len(_prime_cache) < k:
            _extend_primes(k)
        return _prime_cache[:k]


def primes_up_to(bound: int) -> List[int]:
    """bound 이하의 소수"""
    if bound < 2:
        return []
    with _prime_lock:
        while _prime_cache[-1] < bound:
            _extend_primes(len(_prime_cache) + 64)
        return [p for p in _prime_cache if p <= bound]


def prime_powers_up_to(bound: int) -> List[int]:
    """bound 이하의 소수 거듭제곱 (오름차순)"""
    powers = []
    for p in primes_up_to(bound):
        pe = p
        while pe <= bound:
            powers.append(pe)
            pe *= p
    return sorted(set(powers))


def isqrt_ceil(n: int) -> int:
    """ceil(sqrt(n))"""
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def is_square(n: int) -> bool:
    """완전제곱수 여부 (음수는 False)"""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Tuple[int, int]:
    """서로소인 법 m1, m2 에 대한 중국인의 나머지 정리"""
    if math.gcd(m1, m2) != 1:
        raise ValueError("법이 서로소가 아닙니다.")
    inv = pow(m1, -1, m2)
    x = (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)
    return x, m1 * m2


def r_function(q: PrimePower) -> Fraction:
    """r(q) = φ(q)/q = (p-1)/p"""
    return Fraction(q.p - 1, q.p)
