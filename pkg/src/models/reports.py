#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
결과 보고서 데이터 모델과 JSON 직렬화

정확한 유리수는 [분자, 분모] 문자열 쌍, 다항식은 오름차순 계수 문자열로 내보낸다.
모든 최상위 JSON 에는 "schema": "weilforge/1" 키가 붙는다.
"""

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.weil_data import SimplicityVerdict
from src.services.asymptotics import Interval, surd_rational_bounds
from src.services.intpoly import IntPoly
from src.services.modpoly import FactorPattern, ResiduePoly
from src.services.surd import SurdValue

SCHEMA = "weilforge/1"

COMMANDS = (
    "check",
    "surface-classify",
    "surface-census",
    "construct",
    "bounds",
    "count",
    "verify-tables",
    "verify-reduction",
)


class OutputFormat(str, Enum):
    """출력 형식"""
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


# ---------------------------------------------------------------------------
# 직렬화
# ---------------------------------------------------------------------------

def fraction_json(value: Fraction) -> List[str]:
    return [str(value.numerator), str(value.denominator)]


def surd_json(value: SurdValue) -> Dict[str, Any]:
    """u + v√r 와 근사값"""
    lo, hi = surd_rational_bounds(value)
    return {
        "rational": fraction_json(value.u),
        "sqrt_coeff": fraction_json(value.v),
        "radicand": value.radicand,
        "approx": float((lo + hi) / 2),
    }


def interval_json(value: Interval) -> Dict[str, Any]:
    return {
        "lo": fraction_json(value.lo),
        "hi": fraction_json(value.hi),
        "approx": float(value.midpoint),
    }


def to_jsonable(value: Any) -> Any:
    """도메인 값을 JSON 호환 값으로 재귀 변환"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, Fraction):
        return fraction_json(value)
    if isinstance(value, SurdValue):
        return surd_json(value)
    if isinstance(value, Interval):
        return interval_json(value)
    if isinstance(value, (IntPoly, ResiduePoly)):
        return value.to_string()
    if isinstance(value, FactorPattern):
        return list(value.degrees)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseModel):
        to_dict = getattr(value, "to_dict", None)
        return to_dict() if to_dict else to_jsonable(value.model_dump())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"JSON 으로 변환할 수 없는 값: {type(value).__name__}")


def envelope(payload: Dict[str, Any]) -> Dict[str, Any]:
    """최상위 JSON 에 스키마 키 추가"""
    return {"schema": SCHEMA, **to_jsonable(payload)}


# ---------------------------------------------------------------------------
# 요청
# ---------------------------------------------------------------------------

class CommandRequest(BaseModel):
    """CLI 한 번의 호출"""
    subcommand: str = Field(..., description="하위 명령 이름")
    options: Dict[str, Any] = Field(default_factory=dict, description="파싱된 플래그")
    output: Optional[str] = Field(None, description="출력 경로 (None 이면 stdout)")
    output_format: OutputFormat = Field(OutputFormat.JSON, description="출력 형식")
    jobs: int = Field(1, ge=1, le=256, description="병렬 워커 수")
    cache_dir: Optional[str] = Field(None, description="탐색 결과 캐시 디렉토리")

    @field_validator('subcommand')
    def validate_subcommand(cls, v):
        if v not in COMMANDS:
            raise ValueError(f"알 수 없는 하위 명령: {v}")
        return v


# ---------------------------------------------------------------------------
# 보고서
# ---------------------------------------------------------------------------

class ConstructionReport(BaseModel):
    """절대 단순 통상 Weil 다항식 구성 결과"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=2, description="차원")
    q: int = Field(..., ge=2, description="유한체 크기")
    source: str = Field(..., description="surface | table | pipeline")
    g2: Optional[ResiduePoly] = Field(None, description="F_2 위 기저 다항식")
    g3: Optional[ResiduePoly] = Field(None, description="F_3 위 기저 다항식")
    a_coeffs: List[int] = Field(default_factory=list, description="a_7..a_n")
    robinson: Optional[bool] = Field(None, description="근 위치 충분조건 성립 여부")
    g: IntPoly = Field(..., description="실 동반 다항식")
    f: IntPoly = Field(..., description="Weil 다항식")
    hypothesis_flags: Dict[str, bool] = Field(..., description="h1..h5")
    hypothesis_primes: Dict[str, Optional[int]] = Field(default_factory=dict, description="p1, p2")
    verdict: SimplicityVerdict = Field(..., description="절대 단순성 판정")

    @property
    def succeeded(self) -> bool:
        hypotheses_ok = self.n == 2 or all(self.hypothesis_flags.values())
        return hypotheses_ok and self.verdict.is_absolutely_simple

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            "n": self.n,
            "q": self.q,
            "source": self.source,
            "g": self.g.to_string(),
            "f": self.f.to_string(),
            "hypothesis_flags": dict(self.hypothesis_flags),
            "hypothesis_primes": dict(self.hypothesis_primes),
            **self.verdict.to_dict(),
        }
        if self.g2 is not None:
            payload["g2"] = self.g2.to_string()
            payload["g3"] = self.g3.to_string()
            payload["a_coeffs"] = list(self.a_coeffs)
            payload["robinson"] = self.robinson
        return payload


class SurfaceCensus(BaseModel):
    """q 에서의 통상 곡면 isogeny 류 집계"""
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2)
    elliptic_ordinary: int = Field(..., ge=0, description="통상 타원 곡선 류 수 E")
    simple_ordinary: int = Field(..., ge=0, description="O_simple")
    abs_simple_ordinary: int = Field(..., ge=0, description="O_abs.simple")
    split_by_degree: Dict[int, int] = Field(..., description="분해 차수별 개수")
    reducible_ordinary: int = Field(..., ge=0, description="E(E+1)/2")
    reducible_ordinary_enumerated: int = Field(..., ge=0, description="열거된 가약 통상 쌍 수")
    non_abs_simple_nonzero_a: int = Field(..., ge=0, description="a != 0 인 비절대단순 류 수")
    bound_report: Dict[str, Any] = Field(default_factory=dict, description="경계식 비교")

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable(self.model_dump())


class BoundsReport(BaseModel):
    """상수, 임계값, 경계식"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=1)
    epsilon: Fraction = Field(..., description="ε")
    v_n: Fraction = Field(..., description="v_n")
    constants: Dict[str, Interval] = Field(..., description="c1, c2, c3, G_n 구간")
    thresholds: Optional[Dict[str, Any]] = Field(None, description="k, m, M (n >= 2)")
    surface_threshold: Optional[Fraction] = Field(None, description="(659/ε)^2 (n = 2)")
    at_q: Optional[Dict[str, Any]] = Field(None, description="주어진 q 에서의 경계값")

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "n": self.n,
            "epsilon": self.epsilon,
            "v_n": self.v_n,
            "constants": self.constants,
        }
        for key in ("thresholds", "surface_threshold", "at_q"):
            value = getattr(self, key)
            if value is not None:
                payload[key] = value
        return to_jsonable(payload)


class ReductionReport(BaseModel):
    """축약 보조정리 전수 검증 결과"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=3)
    primes: List[int] = Field(..., min_length=1)
    exhaustive_count: int
    formula_count: int
    formula_matches: bool
    bounds_hold: bool
    details: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_result(cls, result: Dict[str, Any]) -> 'ReductionReport':
        details = {k: v for k, v in result.items()
                   if k not in ("n", "primes", "exhaustive_count", "formula_count",
                                "formula_matches", "bounds_hold")}
        return cls(
            n=result["n"],
            primes=result["primes"],
            exhaustive_count=result["exhaustive_count"],
            formula_count=result["formula_count"],
            formula_matches=result["formula_matches"],
            bounds_hold=result["bounds_hold"],
            details=details,
        )

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable(self.model_dump())
