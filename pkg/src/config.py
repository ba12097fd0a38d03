#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
실행 설정 - CLI 플래그로만 구성 (환경 변수는 읽지 않음)
"""

from fractions import Fraction
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class RunSettings(BaseModel):
    """실행 설정"""
    cache_dir: Optional[Path] = Field(default=None, description="chebgen 탐색 결과 캐시 디렉토리")
    checkpoint_dir: Optional[Path] = Field(default=None, description="census 부분 결과 디렉토리")
    jobs: int = Field(default=1, ge=1, le=256, description="워커 수")
    log_level: str = Field(default="WARNING", description="로그 레벨")
    log_file: Optional[str] = Field(default=None, description="로그 파일 경로")
    precision_digits: int = Field(default=9, ge=1, le=200, description="구간 폭 상한 10^-k")
    partition_size: int = Field(default=16, ge=1, description="census 분할당 a 값 개수")
    irreducibility_prime_bound: int = Field(default=200, ge=3, description="기약성 빠른 경로 소수 상한")
    sieve_primes: int = Field(default=10, ge=1, description="차수 패턴 체에 쓰는 소수 개수")

    @field_validator('log_level')
    def validate_log_level(cls, v):
        v = v.upper()
        if v not in LOG_LEVELS:
            raise ValueError(f'로그 레벨은 {LOG_LEVELS} 중 하나여야 합니다.')
        return v

    @property
    def precision(self) -> Fraction:
        """구간 폭 상한"""
        return Fraction(1, 10 ** self.precision_digits)
