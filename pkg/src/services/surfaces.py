#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
2차원 계층 - 곡면 분류기, 통상 곡면 isogeny 류 전수 열거, 타원 곡선 개수, census 통계

f = x^4 + a x^3 + b x^2 + a q x + q^2, 실 동반 다항식 g = x^2 + a x + (b - 2q).
모든 판정은 정수 연산으로만 한다.
"""

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, TextIO, Tuple

from src.models.reports import SurfaceCensus, surd_json
from src.models.weil_data import PrimePower, SurfaceClass, SurfaceParams
from src.services import asymptotics
from src.services.intpoly import IntPoly, is_irreducible_over_rationals, power_charpoly
from src.services.numth import is_square, isqrt_ceil, parse_prime_power
from src.services.surd import SurdValue
from src.utils.async_worker import run_partitioned
from src.utils.exceptions import InvalidDegree, NotOrdinary, NotSimple, NotWeil
from src.utils.logger import setup_logger
from src.utils.performance_monitor import track_performance

logger = setup_logger(__name__)

CSV_COLUMNS = ["q", "a", "b", "class", "splitting_degree"]
SPLIT_DEGREES = (2, 3, 4, 6)


def surface_poly(s: SurfaceParams) -> IntPoly:
    return IntPoly(s.coefficients)


# ---------------------------------------------------------------------------
# 정확한 술어
# ---------------------------------------------------------------------------

def is_surface_weil(a: int, b: int, q: PrimePower) -> bool:
    """
    g = x^2 + a x + (b - 2q) 의 두 근이 실수이고 [-2√q, 2√q] 안에 있는지

    판별식 a^2 - 4b + 8q >= 0, 끝점 g(±2√q) >= 0 ⇔ b + 2q >= 2|a|√q
    (b + 2q >= 0 이고 (b + 2q)^2 >= 4a^2 q), 꼭짓점 -a/2 가 구간 안 ⇔ a^2 <= 16q.
    """
    qq = q.q
    shifted = b + 2 * qq
    return (
        a * a - 4 * b + 8 * qq >= 0
        and shifted >= 0
        and shifted * shifted >= 4 * a * a * qq
        and a * a <= 16 * qq
    )


def is_surface_ordinary(b: int, q: PrimePower) -> bool:
    return math.gcd(b, q.q) == 1


def is_surface_irreducible(a: int, b: int, q: PrimePower) -> bool:
    """
    Weil 곡면 다항식의 유리수체 위 기약성

    근의 절댓값이 모두 √q 이므로 이차 인수의 상수항은 ±q 뿐이다.
    상수항 q 인 분해는 g 의 분해(판별식이 제곱수)와 같고,
    상수항 -q 인 분해 (x^2 + ux - q)(x^2 - ux - q) 는 a = 0, u^2 = -b - 2q 일 때만 생긴다.
    Weil 이 아닌 입력은 일반 판정으로 넘긴다.
    """
    if not is_surface_weil(a, b, q):
        return is_irreducible_over_rationals(surface_poly(SurfaceParams(a=a, b=b, q=q)))
    if is_square(a * a - 4 * b + 8 * q.q):
        return False
    if a == 0 and is_square(-b - 2 * q.q):
        return False
    return True


def _classify(a: int, b: int, q: int) -> SurfaceClass:
    if a == 0:
        return SurfaceClass.SPLITS_QUADRATIC
    a2 = a * a
    if a2 == q + b:
        return SurfaceClass.SPLITS_CUBIC
    if a2 == 2 * b:
        return SurfaceClass.SPLITS_QUARTIC
    if a2 == 3 * b - 3 * q:
        return SurfaceClass.SPLITS_SEXTIC
    return SurfaceClass.ABSOLUTELY_SIMPLE


def classify_surface(s: SurfaceParams) -> SurfaceClass:
    """
    단순 통상 곡면의 분류

    a = 0 → 이차, a^2 = q + b → 삼차, a^2 = 2b → 사차, a^2 = 3b - 3q → 육차 확장에서 분해,
    그 외는 절대 단순.

    Raises:
        NotWeil, NotOrdinary, NotSimple: 전제 조건 위반
    """
    a, b, q = s.a, s.b, s.q
    if not is_surface_weil(a, b, q):
        raise NotWeil(f"(a={a}, b={b}) 는 q={q.q} 의 Weil 다항식이 아닙니다.", a=a, b=b, q=q.q)
    if not is_surface_ordinary(b, q):
        raise NotOrdinary(f"b={b} 가 q={q.q} 와 서로소가 아니므로 통상이 아닙니다.", a=a, b=b, q=q.q)
    if not is_surface_irreducible(a, b, q):
        raise NotSimple(f"(a={a}, b={b}, q={q.q}) 의 다항식이 기약이 아닙니다.", a=a, b=b, q=q.q)
    return _classify(a, b, q.q)


def count_ordinary_elliptic(q: PrimePower) -> int:
    """E = #{t : t^2 < 4q, gcd(t, q) = 1}"""
    t_max = math.isqrt(4 * q.q - 1)
    return sum(1 for t in range(-t_max, t_max + 1) if t % q.p != 0)


# ---------------------------------------------------------------------------
# 열거
# ---------------------------------------------------------------------------

def a_bound(q: PrimePower) -> int:
    """a^2 <= 16q 인 최대 |a|"""
    return math.isqrt(16 * q.q)


def b_range(a: int, q: PrimePower) -> range:
    """
    고정된 a 에서 Weil 조건을 만족하는 b 의 범위

    하한: b + 2q >= 2|a|√q ⇔ b >= ceil(√(4 a^2 q)) - 2q
    상한: a^2 - 4b + 8q >= 0 ⇔ b <= floor(a^2 / 4) + 2q
    """
    qq = q.q
    return range(isqrt_ceil(4 * a * a * qq) - 2 * qq, a * a // 4 + 2 * qq + 1)


def _iter_ordinary_weil(a: int, q: PrimePower) -> Iterator[Tuple[int, bool]]:
    """(b, 기약 여부) - 고정 a 의 통상 Weil 쌍"""
    qq = q.q
    for b in b_range(a, q):
        if b % q.p == 0:
            continue
        irreducible = not is_square(a * a - 4 * b + 8 * qq) and not (a == 0 and is_square(-b - 2 * qq))
        yield b, irreducible


def enumerate_ordinary_simple_surfaces(
    q: PrimePower,
    a_lo: Optional[int] = None,
    a_hi: Optional[int] = None
) -> Iterator[SurfaceParams]:
    """
    단순 통상 isogeny 류마다 (a, b) 하나씩 (a 오름차순, b 오름차순)

    Args:
        q: 유한체 크기
        a_lo, a_hi: 지정하면 a 를 [a_lo, a_hi] 로 제한 (분할 열거)
    """
    bound = a_bound(q)
    lo = -bound if a_lo is None else max(a_lo, -bound)
    hi = bound if a_hi is None else min(a_hi, bound)
    for a in range(lo, hi + 1):
        for b, irreducible in _iter_ordinary_weil(a, q):
            if irreducible:
                yield SurfaceParams(a=a, b=b, q=q)


# ---------------------------------------------------------------------------
# 분해 항등식
# ---------------------------------------------------------------------------

def alpha_beta(a: int, b: int, q: PrimePower, d: int) -> Tuple[int, int]:
    """π^d 의 특성다항식 x^4 + αx^3 + βx^2 + αq^d x + q^2d 에서 (α, β)"""
    charpoly = power_charpoly(surface_poly(SurfaceParams(a=a, b=b, q=q)), d)
    return charpoly.coeff(3), charpoly.coeff(2)


def splitting_identity(a: int, b: int, q: PrimePower, d: int) -> int:
    """d ∈ {2,3,4,6} 에서 α^2 - 4β + 8q^d 와 같아야 하는 곱"""
    qq = q.q
    disc = a * a - 4 * b + 8 * qq
    if d == 2:
        return a * a * disc
    if d == 3:
        return (a * a - b - qq) ** 2 * disc
    if d == 4:
        return a * a * (a * a - 2 * b) ** 2 * disc
    if d == 6:
        return a * a * (a * a - b - qq) ** 2 * (a * a - 3 * b + 3 * qq) ** 2 * disc
    raise InvalidDegree("d 는 2, 3, 4, 6 중 하나여야 합니다.", d=d)


def quartic_discriminant_form(a: int, b: int, q: PrimePower, d: int) -> int:
    """α^2 - 4β + 8q^d"""
    alpha, beta = alpha_beta(a, b, q, d)
    return alpha * alpha - 4 * beta + 8 * q.q ** d


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusJob:
    """a ∈ [a_lo, a_hi] 분할 작업"""
    q: int
    a_lo: int
    a_hi: int
    rows_path: Optional[str] = None
    checkpoint_path: Optional[str] = None


def census_partitions(q: PrimePower, partition_size: int = 16) -> List[Tuple[int, int]]:
    """a 범위를 고정 크기 구간으로 분할 (워커 수와 무관)"""
    if partition_size < 1:
        raise ValueError("partition_size >= 1 이어야 합니다.")
    bound = a_bound(q)
    return [
        (lo, min(lo + partition_size - 1, bound))
        for lo in range(-bound, bound + 1, partition_size)
    ]


def _empty_counts() -> Dict[str, Any]:
    return {
        "simple": 0,
        "abs_simple": 0,
        "split": {str(d): 0 for d in SPLIT_DEGREES},
        "non_abs_simple_nonzero_a": 0,
        "reducible": 0,
    }


def _write_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    os.replace(tmp, path)


def census_partition(job: CensusJob) -> Dict[str, Any]:
    """
    분할 하나의 census

    rows_path 가 있으면 CSV 행을 그 파일에 쓰고, checkpoint_path 가 있으면
    집계를 JSON 으로 남긴다. 두 파일 모두 임시 파일 후 이름 변경으로 기록한다.
    """
    if job.checkpoint_path and os.path.exists(job.checkpoint_path) and (
            job.rows_path is None or os.path.exists(job.rows_path)):
        with open(job.checkpoint_path, 'r', encoding='utf-8') as f:
            logger.debug(f"체크포인트 재사용: {job.checkpoint_path}")
            return json.load(f)

    q = parse_prime_power(job.q)
    counts = _empty_counts()
    sink = open(f"{job.rows_path}.tmp", 'w', encoding='utf-8', newline='') if job.rows_path else None
    writer = csv.writer(sink, lineterminator='\n') if sink else None
    try:
        for a in range(job.a_lo, job.a_hi + 1):
            for b, irreducible in _iter_ordinary_weil(a, q):
                if not irreducible:
                    counts["reducible"] += 1
                    continue
                cls = _classify(a, b, q.q)
                counts["simple"] += 1
                degree = cls.splitting_degree
                if degree is None:
                    counts["abs_simple"] += 1
                else:
                    counts["split"][str(degree)] += 1
                    if a != 0:
                        counts["non_abs_simple_nonzero_a"] += 1
                if writer:
                    verdict = cls.to_verdict()
                    writer.writerow([q.q, a, b, verdict.kind.value, degree if degree is not None else ""])
    finally:
        if sink:
            sink.close()
    if job.rows_path:
        os.replace(f"{job.rows_path}.tmp", job.rows_path)
    if job.checkpoint_path:
        _write_atomic(job.checkpoint_path, json.dumps(counts, sort_keys=True))
    return counts


def merge_partitions(q: PrimePower, parts: List[Dict[str, Any]]) -> SurfaceCensus:
    """분할 집계 합산 (결합·교환 법칙 성립)"""
    total = _empty_counts()
    for part in parts:
        for key in ("simple", "abs_simple", "non_abs_simple_nonzero_a", "reducible"):
            total[key] += part[key]
        for d, count in part["split"].items():
            total["split"][d] += count

    elliptic = count_ordinary_elliptic(q)
    census = SurfaceCensus(
        q=q.q,
        elliptic_ordinary=elliptic,
        simple_ordinary=total["simple"],
        abs_simple_ordinary=total["abs_simple"],
        split_by_degree={int(d): c for d, c in total["split"].items()},
        reducible_ordinary=elliptic * (elliptic + 1) // 2,
        reducible_ordinary_enumerated=total["reducible"],
        non_abs_simple_nonzero_a=total["non_abs_simple_nonzero_a"],
    )
    return census.model_copy(update={"bound_report": census_bound_report(q, census)})


def _job_paths(q: PrimePower, a_lo: int, a_hi: int, rows_dir: Optional[Path],
               checkpoint_dir: Optional[Path]) -> Tuple[Optional[str], Optional[str]]:
    stem = f"census_q{q.q}_a{a_lo}_{a_hi}"
    rows = str(rows_dir / f"{stem}.csv") if rows_dir else None
    checkpoint = str(checkpoint_dir / f"{stem}.json") if checkpoint_dir else None
    return rows, checkpoint


@track_performance("surface_census")
def surface_census(
    q: PrimePower,
    jobs: int = 1,
    partition_size: int = 16,
    checkpoint_dir: Optional[Path] = None,
    rows_sink: Optional[TextIO] = None
) -> SurfaceCensus:
    """
    q 에서의 단순 통상 곡면 census

    Args:
        q: 유한체 크기
        jobs: 워커 수
        partition_size: 분할당 a 값 개수
        checkpoint_dir: 분할별 집계/행 파일 디렉토리 (중단 후 재개)
        rows_sink: CSV 행을 쓸 스트림 (헤더 제외, 분할 순서대로)
    """
    spans = census_partitions(q, partition_size)
    if checkpoint_dir is not None:
        checkpoint_dir = Path(checkpoint_dir)
        checkpoint_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"census 시작: q={q.q}, 분할 {len(spans)}개, jobs={jobs}")

    with tempfile.TemporaryDirectory(prefix="weilforge_census_") as scratch:
        rows_dir = None
        if rows_sink is not None:
            rows_dir = checkpoint_dir if checkpoint_dir is not None else Path(scratch)
        job_list = []
        for lo, hi in spans:
            rows_path, checkpoint_path = _job_paths(q, lo, hi, rows_dir, checkpoint_dir)
            job_list.append(CensusJob(q.q, lo, hi, rows_path, checkpoint_path))

        parts = run_partitioned(census_partition, job_list, jobs)

        if rows_sink is not None:
            for job in job_list:
                with open(job.rows_path, 'r', encoding='utf-8', newline='') as f:
                    for line in f:
                        rows_sink.write(line)

    census = merge_partitions(q, parts)
    logger.info(f"census 완료: q={q.q}, 단순 통상 {census.simple_ordinary}개")
    return census


def census_csv_rows(q: PrimePower) -> List[List[Any]]:
    """메모리 내 CSV 행 (작은 q 전용)"""
    rows = []
    for s in enumerate_ordinary_simple_surfaces(q):
        cls = _classify(s.a, s.b, q.q)
        degree = cls.splitting_degree
        rows.append([q.q, s.a, s.b, cls.to_verdict().kind.value, degree if degree is not None else ""])
    return rows


# ---------------------------------------------------------------------------
# 경계식 비교
# ---------------------------------------------------------------------------

def count_ordinary_surfaces_lower(q: PrimePower) -> SurdValue:
    """통상 곡면 isogeny 류 수의 하한 (32/3) r(q) q^{3/2} - 8359 q^{1/2}"""
    return asymptotics.ORDINARY_LOWER.evaluate(q)


def fraction_lower_bound(q: PrimePower, census: SurfaceCensus) -> Dict[str, Any]:
    """
    S(F_q, 2) 의 보증된 유리수 하한

    O_abs.simple / (I 상한의 유리수 상한). q > 659^2 이면 1 - 659/√q 를
    내림한 값과 큰 q 용 단순화 경계식도 함께 보고한다.
    """
    i_upper = asymptotics.I_UPPER.evaluate(q)
    _, i_upper_rational = asymptotics.surd_rational_bounds(i_upper)
    report: Dict[str, Any] = {
        "certified_lower": Fraction(census.abs_simple_ordinary) / i_upper_rational,
        "large_q_regime": q.q > asymptotics.SURFACE_THRESHOLD_NUMERATOR ** 2,
    }
    if report["large_q_regime"]:
        root_lo = asymptotics.sqrt_lower(q.q)
        report["closed_form_lower"] = 1 - Fraction(asymptotics.SURFACE_THRESHOLD_NUMERATOR) / root_lo
        report["I_upper_large_q"] = surd_json(asymptotics.I_UPPER_LARGE_Q.evaluate(q))
        report["O_abs_simple_lower_large_q"] = surd_json(asymptotics.O_ABS_SIMPLE_LOWER_LARGE_Q.evaluate(q))
    return report


def census_bound_report(q: PrimePower, census: SurfaceCensus) -> Dict[str, Any]:
    """census 의 정확한 개수와 경계식 비교"""
    bounds = asymptotics.surface_bounds(q)
    ordinary_total = census.reducible_ordinary + census.simple_ordinary
    k = census.non_abs_simple_nonzero_a
    e = census.elliptic_ordinary
    fraction = fraction_lower_bound(q, census)
    checks = {
        "o_simple_exceeds_lower": SurdValue(census.simple_ordinary, 0, q.q) > bounds["O_simple_lower"],
        "o_abs_simple_exceeds_lower": SurdValue(census.abs_simple_ordinary, 0, q.q) > bounds["O_abs_simple_lower"],
        "non_abs_simple_nonzero_a_within": k * k <= 225 * q.q,
        "ordinary_within_I_upper": SurdValue(ordinary_total, 0, q.q) < bounds["I_upper"],
        "ordinary_at_least_lower": SurdValue(ordinary_total, 0, q.q) >= count_ordinary_surfaces_lower(q),
        "elliptic_within": e * e <= 16 * q.q,
        "reducible_matches_elliptic": census.reducible_ordinary_enumerated == census.reducible_ordinary,
        "partition_consistent": census.simple_ordinary == census.abs_simple_ordinary + sum(census.split_by_degree.values()),
    }
    return {
        "bounds": {name: surd_json(value) for name, value in bounds.items()},
        "ordinary_lower": surd_json(count_ordinary_surfaces_lower(q)),
        "checks": checks,
        "all_checks_pass": all(checks.values()),
        "S_lower_bound": {
            key: ([str(v.numerator), str(v.denominator)] if isinstance(v, Fraction) else v)
            for key, v in fraction.items()
        },
    }
