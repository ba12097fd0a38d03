#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Weil 다항식 도메인 데이터 모델
"""

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PrimePower(BaseModel):
    """소수 거듭제곱 q = p^e"""
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2, description="유한체 원소 개수")
    p: int = Field(..., ge=2, description="표수 (소수)")
    e: int = Field(..., ge=1, description="지수")

    @model_validator(mode='after')
    def validate_power(self):
        if self.p ** self.e != self.q:
            raise ValueError(f'{self.p}^{self.e} != {self.q}')
        return self

    def __int__(self) -> int:
        return self.q

    def __str__(self) -> str:
        return f"{self.p}^{self.e}" if self.e > 1 else str(self.p)


class VerdictKind(str, Enum):
    """절대 단순성 판정 종류"""
    ABSOLUTELY_SIMPLE = "abs_simple"
    SPLITS = "splits"
    INCONCLUSIVE = "inconclusive"


class SimplicityVerdict(BaseModel):
    """절대 단순성 판정 결과"""
    model_config = ConfigDict(frozen=True)

    kind: VerdictKind = Field(..., description="판정 종류")
    degree: Optional[int] = Field(None, gt=1, description="최소 분해 차수 또는 증거 d")

    @model_validator(mode='after')
    def validate_degree(self):
        if self.kind == VerdictKind.ABSOLUTELY_SIMPLE and self.degree is not None:
            raise ValueError('절대 단순 판정에는 차수가 없습니다.')
        if self.kind != VerdictKind.ABSOLUTELY_SIMPLE and self.degree is None:
            raise ValueError('분해/미결 판정에는 차수가 필요합니다.')
        return self

    @classmethod
    def absolutely_simple(cls) -> 'SimplicityVerdict':
        return cls(kind=VerdictKind.ABSOLUTELY_SIMPLE)

    @classmethod
    def splits_at(cls, degree: int) -> 'SimplicityVerdict':
        return cls(kind=VerdictKind.SPLITS, degree=degree)

    @classmethod
    def inconclusive(cls, degree: int) -> 'SimplicityVerdict':
        return cls(kind=VerdictKind.INCONCLUSIVE, degree=degree)

    @property
    def is_absolutely_simple(self) -> bool:
        return self.kind == VerdictKind.ABSOLUTELY_SIMPLE

    def to_dict(self) -> Dict[str, Any]:
        """{"verdict": ..., "degree": d} 형태로 직렬화"""
        payload: Dict[str, Any] = {"verdict": self.kind.value}
        if self.degree is not None:
            payload["degree"] = self.degree
        return payload


class SurfaceClass(str, Enum):
    """단순 통상 곡면의 분류"""
    ABSOLUTELY_SIMPLE = "abs_simple"
    SPLITS_QUADRATIC = "splits_quadratic"
    SPLITS_CUBIC = "splits_cubic"
    SPLITS_QUARTIC = "splits_quartic"
    SPLITS_SEXTIC = "splits_sextic"

    @property
    def splitting_degree(self) -> Optional[int]:
        return _SPLITTING_DEGREES.get(self)

    def to_verdict(self) -> SimplicityVerdict:
        degree = self.splitting_degree
        if degree is None:
            return SimplicityVerdict.absolutely_simple()
        return SimplicityVerdict.splits_at(degree)


_SPLITTING_DEGREES = {
    SurfaceClass.SPLITS_QUADRATIC: 2,
    SurfaceClass.SPLITS_CUBIC: 3,
    SurfaceClass.SPLITS_QUARTIC: 4,
    SurfaceClass.SPLITS_SEXTIC: 6,
}


class SurfaceParams(BaseModel):
    """f = x^4 + a x^3 + b x^2 + a q x + q^2"""
    model_config = ConfigDict(frozen=True)

    a: int = Field(..., description="x^3 계수")
    b: int = Field(..., description="x^2 계수")
    q: PrimePower = Field(..., description="유한체 크기")

    @property
    def coefficients(self):
        """오름차순 계수"""
        q = self.q.q
        return [q * q, self.a * q, self.b, self.a, 1]
