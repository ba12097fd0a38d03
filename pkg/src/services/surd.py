#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
u + v·√r 정확 산술 (u, v 유리수, r 양의 정수)

√2 가중치(Robinson 부등식, Chebyshev 정의식)와 √q 항이 들어간 경계식 비교에 사용.
"""

from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]


@total_ordering
class SurdValue:
    """Q(√r) 의 원소 u + v√r"""

    __slots__ = ("u", "v", "radicand")

    def __init__(self, u: Rational = 0, v: Rational = 0, radicand: int = 2):
        if radicand < 1:
            raise ValueError("radicand 는 양의 정수여야 합니다.")
        object.__setattr__(self, "u", Fraction(u))
        object.__setattr__(self, "v", Fraction(v))
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, key, value):
        raise AttributeError("SurdValue 는 불변입니다.")

    @classmethod
    def sqrt_power(cls, k: int, radicand: int = 2) -> 'SurdValue':
        """r^(k/2)"""
        if k < 0:
            return cls.sqrt_power(-k, radicand).inverse()
        if k % 2 == 0:
            return cls(radicand ** (k // 2), 0, radicand)
        return cls(0, radicand ** (k // 2), radicand)

    def _coerce(self, other) -> 'SurdValue':
        if isinstance(other, SurdValue):
            if other.radicand != self.radicand:
                raise ValueError(f"radicand 불일치: {self.radicand} != {other.radicand}")
            return other
        if isinstance(other, (int, Fraction)):
            return SurdValue(other, 0, self.radicand)
        return NotImplemented

    # ---- 산술 ----
    def __add__(self, other) -> 'SurdValue':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SurdValue(self.u + other.u, self.v + other.v, self.radicand)

    __radd__ = __add__

    def __neg__(self) -> 'SurdValue':
        return SurdValue(-self.u, -self.v, self.radicand)

    def __sub__(self, other) -> 'SurdValue':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'SurdValue':
        return (-self) + other

    def __mul__(self, other) -> 'SurdValue':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        r = self.radicand
        return SurdValue(
            self.u * other.u + r * self.v * other.v,
            self.u * other.v + self.v * other.u,
            r,
        )

    __rmul__ = __mul__

    def conjugate(self) -> 'SurdValue':
        return SurdValue(self.u, -self.v, self.radicand)

    def norm(self) -> Fraction:
        """(u + v√r)(u - v√r)"""
        return self.u * self.u - self.radicand * self.v * self.v

    def inverse(self) -> 'SurdValue':
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("노름이 0인 원소는 역원이 없습니다.")
        c = self.conjugate()
        return SurdValue(c.u / n, c.v / n, self.radicand)

    def __truediv__(self, other) -> 'SurdValue':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int) -> 'SurdValue':
        if k < 0:
            return self.inverse() ** (-k)
        result = SurdValue(1, 0, self.radicand)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ---- 부호 / 비교 ----
    def sign(self) -> int:
        """u + v√r 의 부호 (제곱 비교로 정확히)"""
        su = (self.u > 0) - (self.u < 0)
        sv = (self.v > 0) - (self.v < 0)
        if sv == 0 or su == sv:
            return su or sv
        if su == 0:
            return sv
        diff = self.u * self.u - self.radicand * self.v * self.v
        if diff == 0:
            return 0
        return su if diff > 0 else sv

    def __abs__(self) -> 'SurdValue':
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() == 0

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        return hash((self.u, self.v, self.radicand))

    def __repr__(self) -> str:
        return f"SurdValue({self.u} + {self.v}*sqrt({self.radicand}))"

    def __str__(self) -> str:
        if self.v == 0:
            return str(self.u)
        return f"{self.u} + {self.v}√{self.radicand}"

