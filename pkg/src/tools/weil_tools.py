#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Weil 다항식 도구 구현

각 메서드는 서비스 계층을 호출하고 JSON 호환 dict 를 반환한다.
사전조건 위반은 {"status": "error", "code": ..., "message": ...} 로 돌려준다.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, TextIO

from src.config import RunSettings
from src.models.reports import BoundsReport, ReductionReport
from src.models.weil_data import SurfaceParams
from src.services import asymptotics, chebgen, surfaces
from src.services.intpoly import IntPoly, is_irreducible_over_rationals
from src.services.modpoly import count_irreducible, count_linear_times_irreducible
from src.services.numth import is_prime, parse_prime_power, prime_powers_up_to
from src.services.weilcore import (
    absolute_simplicity,
    hypothesis_flags,
    is_ordinary_weil,
    is_real_weil,
    real_to_weil,
    weil_to_real,
)
from src.utils.cache_manager import CacheManager
from src.utils.exceptions import (
    InvalidDegree,
    InvalidEpsilon,
    NotAPrimePower,
    NotIrreducible,
    NotMonic,
    NotWeil,
    WeilForgeError,
)
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def parse_epsilon(text: Any) -> Fraction:
    """"1/10", "0.1", 정수 모두 허용 (정확한 유리수로)"""
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise InvalidEpsilon(f"ε 를 유리수로 해석할 수 없습니다: {text!r}", epsilon=str(text))


class WeilTools:
    """Weil 다항식 도구 클래스"""

    def __init__(self, settings: Optional[RunSettings] = None):
        self.settings = settings or RunSettings()
        self.cache = CacheManager(self.settings.cache_dir)

    async def check_polynomial(self, q: int, poly: str, real: bool = False) -> Dict[str, Any]:
        """
        Weil 다항식의 절대 단순성 판정

        Args:
            q: 유한체 크기
            poly: 오름차순 계수 문자열
            real: 참이면 poly 를 실 동반 다항식 g 로 보고 다섯 가설도 보고

        Returns:
            판정 결과
        """
        try:
            qp = parse_prime_power(q)
            p = IntPoly.from_string(poly)
            if not p.is_monic():
                raise NotMonic("모닉 다항식이 필요합니다 (정규화하지 않습니다).", poly=p.to_string())
            if real:
                return self._check_real(qp, p)

            g = weil_to_real(p, qp)
            if not is_real_weil(g, qp):
                raise NotWeil("근의 절댓값이 √q 가 아닙니다.", poly=p.to_string(), q=q)
            if not is_irreducible_over_rationals(p, self.settings.irreducibility_prime_bound,
                                                 self.settings.sieve_primes):
                raise NotIrreducible("f 가 유리수체 위에서 기약이 아닙니다.", poly=p.to_string())
            ordinary = is_ordinary_weil(p, qp)
            verdict = absolute_simplicity(p, qp, ordinary=ordinary)
            return {
                "status": "success",
                "q": q,
                "poly": p.to_string(),
                "real_companion": g.to_string(),
                "ordinary": ordinary,
                **verdict.to_dict(),
            }
        except WeilForgeError as e:
            return e.to_dict()

    def _check_real(self, qp, g: IntPoly) -> Dict[str, Any]:
        flags = hypothesis_flags(g, qp)
        f = real_to_weil(g, qp)
        result: Dict[str, Any] = {
            "status": "success",
            "q": qp.q,
            "g": g.to_string(),
            "poly": f.to_string(),
            "lemma_applies": g.degree > 2,
            "hypotheses": flags,
        }
        if is_real_weil(g, qp) and is_irreducible_over_rationals(f):
            result.update(absolute_simplicity(f, qp).to_dict())
        return result

    async def classify_surface(self, q: int, a: int, b: int) -> Dict[str, Any]:
        """곡면 (a, b) 분류 - {"class": ..., "degree": d}"""
        try:
            qp = parse_prime_power(q)
            verdict = surfaces.classify_surface(SurfaceParams(a=a, b=b, q=qp)).to_verdict()
            result = {"status": "success", "q": q, "a": a, "b": b, "class": verdict.kind.value}
            if verdict.degree is not None:
                result["degree"] = verdict.degree
            return result
        except WeilForgeError as e:
            return e.to_dict()

    async def surface_census(
        self,
        q: int,
        q_max: Optional[int] = None,
        rows_sink: Optional[TextIO] = None
    ) -> Dict[str, Any]:
        """
        q (또는 [q, q_max] 의 모든 소수 거듭제곱) 에서의 census

        Args:
            q: 시작 q
            q_max: 지정하면 구간 전체
            rows_sink: CSV 행 출력 스트림 (헤더 제외)
        """
        try:
            if q_max is None:
                targets = [parse_prime_power(q).q]
            else:
                if q_max < q:
                    raise NotAPrimePower("q_max 는 q 이상이어야 합니다.", q=q, q_max=q_max)
                targets = [value for value in prime_powers_up_to(q_max) if value >= q]
                if not targets:
                    raise NotAPrimePower(f"[{q}, {q_max}] 에 소수 거듭제곱이 없습니다.", q=q, q_max=q_max)
            results: List[Dict[str, Any]] = []
            for value in targets:
                census = surfaces.surface_census(
                    parse_prime_power(value),
                    jobs=self.settings.jobs,
                    partition_size=self.settings.partition_size,
                    checkpoint_dir=self.settings.checkpoint_dir,
                    rows_sink=rows_sink,
                )
                results.append(census.to_dict())
            return {
                "status": "success",
                "censuses": results,
                "all_checks_pass": all(r["bound_report"]["all_checks_pass"] for r in results),
            }
        except WeilForgeError as e:
            return e.to_dict()

    async def construct(self, n: int, q: int) -> Dict[str, Any]:
        """절대 단순 통상 Weil 다항식 구성"""
        try:
            report = chebgen.construct_absolutely_simple(
                n, parse_prime_power(q), cache=self.cache, jobs=self.settings.jobs
            )
            return {"status": "success", **report.to_dict()}
        except WeilForgeError as e:
            return e.to_dict()

    async def bounds(self, n: int, epsilon: Any, q: Optional[int] = None) -> Dict[str, Any]:
        """
        상수 구간, 임계값, 경계식

        n = 2 는 곡면 임계값 (659/ε)^2 과 q 에서의 곡면 경계식,
        n >= 3 은 (k, m, M) 과 q 에서의 명제 수준 경계값.
        """
        try:
            if n < 2:
                raise InvalidDegree("n >= 2 이어야 합니다.", n=n)
            eps = parse_epsilon(epsilon)
            precision = self.settings.precision
            limits = asymptotics.thresholds(n, eps, precision)
            at_q = None
            surface_threshold = None
            if n == 2:
                surface_threshold = asymptotics.surface_threshold(eps)
                if q is not None:
                    qp = parse_prime_power(q)
                    at_q = {
                        "q": q,
                        **asymptotics.surface_bounds(qp),
                        "applies": q > surface_threshold,
                    }
            elif q is not None:
                qp = parse_prime_power(q)
                higher = asymptotics.higher_dimension_bounds(n, qp, eps, precision)
                higher.pop("thresholds")
                at_q = {"q": q, **higher}
            report = BoundsReport(
                n=n,
                epsilon=eps,
                v_n=asymptotics.v_n(n),
                constants=asymptotics.constants_and_G(n, precision),
                thresholds={key: limits[key] for key in ("k", "m", "M")},
                surface_threshold=surface_threshold,
                at_q=at_q,
            )
            return {"status": "success", **report.to_dict()}
        except WeilForgeError as e:
            return e.to_dict()

    async def count(self, p: int, n: int) -> Dict[str, Any]:
        """F_p 위 모닉 차수 n 의 기약 / 일차×기약 다항식 개수와 하한"""
        try:
            if not is_prime(p):
                raise NotAPrimePower(f"{p} 은(는) 소수가 아닙니다.", p=p)
            if n < 1:
                raise InvalidDegree("n >= 1 이어야 합니다.", n=n)
            irreducible = count_irreducible(p, n)
            result: Dict[str, Any] = {
                "status": "success",
                "p": p,
                "n": n,
                "total": p ** n,
                "irreducible": irreducible,
                "irreducible_lower_bound_holds": Fraction(irreducible) >= Fraction(p ** n, 2 * n),
            }
            if n >= 2:
                linear = count_linear_times_irreducible(p, n)
                result["linear_times_irreducible"] = linear
                result["linear_times_irreducible_lower_bound_holds"] = (
                    Fraction(linear) >= Fraction(p ** n, 2 * n - 2)
                )
            return result
        except WeilForgeError as e:
            return e.to_dict()

    async def verify_tables(self) -> Dict[str, Any]:
        """고정 표 재검증"""
        try:
            result = chebgen.verify_tables()
            status = "success" if result["all_pass"] else "error"
            payload = {"status": status, **result}
            if status == "error":
                payload["code"] = "table_verification_failed"
                payload["message"] = "고정 표의 일부 행이 조건을 만족하지 않습니다."
            return payload
        except WeilForgeError as e:
            return e.to_dict()

    async def verify_reduction(self, n: int, primes: List[int]) -> Dict[str, Any]:
        """축약 보조정리 전수 검증"""
        try:
            result = asymptotics.reduction_verify(n, primes, jobs=self.settings.jobs)
            report = ReductionReport.from_result(result)
            return {"status": "success", **report.to_dict()}
        except WeilForgeError as e:
            return e.to_dict()