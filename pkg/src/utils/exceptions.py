#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
예외 정의 - 모든 사전조건 위반은 기계 판독 가능한 code를 갖는다
"""

from typing import Any, Dict, Optional


class WeilForgeError(ValueError):
    """라이브러리 공통 예외"""

    code = "weilforge_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """JSON 오류 객체로 변환"""
        payload: Dict[str, Any] = {
            "status": "error",
            "code": self.code,
            "message": str(self),
        }
        if self.details:
            payload["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return payload


def _jsonable(value: Any) -> Any:
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


class NotAPrimePower(WeilForgeError):
    code = "not_a_prime_power"


class PrimeTooLarge(WeilForgeError):
    code = "prime_too_large"


class NotSquarefree(WeilForgeError):
    code = "not_squarefree"


class NotIrreducible(WeilForgeError):
    code = "not_irreducible"


class NotMonic(WeilForgeError):
    code = "not_monic"


class FunctionalEquationViolated(WeilForgeError):
    code = "functional_equation_violated"


class InvalidDegree(WeilForgeError):
    code = "invalid_degree"


class NotWeil(WeilForgeError):
    code = "not_weil"


class NotOrdinary(WeilForgeError):
    code = "not_ordinary"


class NotSimple(WeilForgeError):
    code = "not_simple"


class SearchExhausted(WeilForgeError):
    code = "search_exhausted"


class HypothesisFailed(WeilForgeError):
    code = "hypothesis_failed"

    def __init__(self, index: int, message: Optional[str] = None, **details: Any):
        super().__init__(message or f"가설 ({index}) 검증 실패", index=index, **details)
        self.index = index


class InvalidEpsilon(WeilForgeError):
    code = "invalid_epsilon"


class TooLarge(WeilForgeError):
    code = "too_large"


class PolynomialParseError(WeilForgeError):
    code = "polynomial_parse_error"


class InternalError(AssertionError):
    """내부 불변식 위반 (버그) - 복구 대상이 아님"""
