#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
곡면 계층 테스트 - 분류기, 열거, census, 경계식 비교
"""

import csv
import io
import json
import random
import sys
from pathlib import Path

import numpy as np
import pytest
from sympy import Poly, Symbol

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.models.weil_data import SurfaceClass, SurfaceParams, VerdictKind  # noqa: E402
from src.services import chebgen, surfaces  # noqa: E402
from src.services.numth import parse_prime_power, prime_powers_up_to  # noqa: E402
from src.services.weilcore import absolute_simplicity  # noqa: E402
from src.utils.exceptions import InvalidDegree, NotOrdinary, NotSimple, NotWeil  # noqa: E402

x = Symbol('x')
SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def brute_force_ordinary_simple(q: int):
    """넓은 (a, b) 상자에서 numpy 근 절댓값과 sympy 인수분해로 직접 판정"""
    found = set()
    for a in range(-4 * q, 4 * q + 1):
        for b in range(-8 * q, 8 * q + 1):
            if b % q == 0:
                continue
            coeffs = [1, a, b, a * q, q * q]
            roots = np.roots(coeffs)
            if np.max(np.abs(np.abs(roots) - np.sqrt(q))) > 1e-4:
                continue
            _, factors = Poly(coeffs, x).factor_list()
            if len(factors) == 1 and factors[0][1] == 1:
                found.add((a, b))
    return found


def test_surface_q2_counts():
    """q = 2: 손으로 센 값"""
    q = parse_prime_power(2)
    census = surfaces.surface_census(q)
    assert census.elliptic_ordinary == 2
    assert census.simple_ordinary == 13
    assert census.abs_simple_ordinary == 6
    assert census.split_by_degree == {2: 3, 3: 2, 4: 0, 6: 2}
    assert census.reducible_ordinary == 3
    assert census.reducible_ordinary_enumerated == 3
    assert census.non_abs_simple_nonzero_a == 4
    assert census.bound_report["all_checks_pass"]


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_enumeration_matches_brute_force(q):
    qp = parse_prime_power(q)
    enumerated = [(s.a, s.b) for s in surfaces.enumerate_ordinary_simple_surfaces(qp)]
    assert len(enumerated) == len(set(enumerated))
    assert enumerated == sorted(enumerated)
    assert set(enumerated) == brute_force_ordinary_simple(q)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 11])
def test_classifier_agrees_with_general_verdict(q):
    """분류기의 결과는 일반 절대 단순성 판정과 같다"""
    qp = parse_prime_power(q)
    for s in surfaces.enumerate_ordinary_simple_surfaces(qp):
        expected = surfaces.classify_surface(s).to_verdict()
        assert absolute_simplicity(surfaces.surface_poly(s), qp, ordinary=True) == expected


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_splitting_identities(q):
    """α^2 - 4β + 8q^d 가 d 별 곱 공식과 같다"""
    qp = parse_prime_power(q)
    for s in surfaces.enumerate_ordinary_simple_surfaces(qp):
        for d in surfaces.SPLIT_DEGREES:
            assert surfaces.quartic_discriminant_form(s.a, s.b, qp, d) == \
                surfaces.splitting_identity(s.a, s.b, qp, d)
    with pytest.raises(InvalidDegree):
        surfaces.splitting_identity(1, 1, qp, 5)


def test_classify_surface_cases():
    q3 = parse_prime_power(3)
    assert surfaces.classify_surface(SurfaceParams(a=0, b=1, q=q3)) == SurfaceClass.SPLITS_QUADRATIC
    q2 = parse_prime_power(2)
    assert surfaces.classify_surface(SurfaceParams(a=1, b=-1, q=q2)) == SurfaceClass.SPLITS_CUBIC
    assert surfaces.classify_surface(SurfaceParams(a=3, b=5, q=q2)) == SurfaceClass.SPLITS_SEXTIC
    assert surfaces.classify_surface(SurfaceParams(a=1, b=1, q=q2)) == SurfaceClass.ABSOLUTELY_SIMPLE
    # 사차: a^2 = 2b
    q5 = parse_prime_power(5)
    assert surfaces.classify_surface(SurfaceParams(a=4, b=8, q=q5)) == SurfaceClass.SPLITS_QUARTIC
    verdict = SurfaceClass.SPLITS_SEXTIC.to_verdict()
    assert verdict.kind == VerdictKind.SPLITS and verdict.degree == 6


def test_classify_surface_preconditions():
    q2 = parse_prime_power(2)
    with pytest.raises(NotWeil):
        surfaces.classify_surface(SurfaceParams(a=9, b=1, q=q2))
    with pytest.raises(NotOrdinary):
        surfaces.classify_surface(SurfaceParams(a=1, b=2, q=q2))
    with pytest.raises(NotSimple):
        # g = x^2 + 2x + 1
        surfaces.classify_surface(SurfaceParams(a=2, b=5, q=q2))


def test_weil_predicate_boundary():
    """b = -2q, a = 0 은 근 ±2√q"""
    q = parse_prime_power(7)
    assert surfaces.is_surface_weil(0, -14, q)
    assert not surfaces.is_surface_weil(0, -15, q)
    assert not surfaces.is_surface_weil(17, 200, q)


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_elliptic_and_reducible_counts(q):
    qp = parse_prime_power(q)
    expected = sum(1 for t in range(-2 * q, 2 * q + 1) if t * t < 4 * q and t % q)
    e = surfaces.count_ordinary_elliptic(qp)
    assert e == expected
    census = surfaces.surface_census(qp)
    assert census.reducible_ordinary_enumerated == e * (e + 1) // 2


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 31])
def test_bound_report_checks_pass(q):
    census = surfaces.surface_census(parse_prime_power(q))
    checks = census.bound_report["checks"]
    assert all(checks.values()), {k: v for k, v in checks.items() if not v}
    assert census.simple_ordinary == census.abs_simple_ordinary + sum(census.split_by_degree.values())


def test_census_partitions_cover_range():
    q = parse_prime_power(11)
    spans = surfaces.census_partitions(q, partition_size=5)
    bound = surfaces.a_bound(q)
    covered = [a for lo, hi in spans for a in range(lo, hi + 1)]
    assert covered == list(range(-bound, bound + 1))
    with pytest.raises(ValueError):
        surfaces.census_partitions(q, 0)


def test_census_independent_of_partitioning_and_jobs():
    q = parse_prime_power(13)
    reference = surfaces.surface_census(q, jobs=1, partition_size=64)
    for jobs, size in [(1, 1), (2, 3), (3, 7)]:
        assert surfaces.surface_census(q, jobs=jobs, partition_size=size) == reference


def test_census_rows_stream_in_order():
    q = parse_prime_power(7)
    sink = io.StringIO()
    census = surfaces.surface_census(q, jobs=2, partition_size=4, rows_sink=sink)
    rows = list(csv.reader(io.StringIO(sink.getvalue())))
    expected = [[str(v) for v in row] for row in surfaces.census_csv_rows(q)]
    assert rows == expected
    assert len(rows) == census.simple_ordinary
    assert {row[3] for row in rows} <= {"abs_simple", "splits"}


def test_census_checkpoint_resume(tmp_path):
    q = parse_prime_power(11)
    first = surfaces.surface_census(q, partition_size=8, checkpoint_dir=tmp_path)
    checkpoints = sorted(tmp_path.glob("census_q11_*.json"))
    assert len(checkpoints) == len(surfaces.census_partitions(q, 8))

    # 체크포인트 하나를 조작하면 재실행이 그 값을 그대로 사용한다
    tampered = json.loads(checkpoints[0].read_text(encoding="utf-8"))
    tampered["abs_simple"] += 1
    tampered["simple"] += 1
    checkpoints[0].write_text(json.dumps(tampered), encoding="utf-8")
    resumed = surfaces.surface_census(q, partition_size=8, checkpoint_dir=tmp_path)
    assert resumed.abs_simple_ordinary == first.abs_simple_ordinary + 1

    # 지우면 다시 계산
    checkpoints[0].unlink()
    recomputed = surfaces.surface_census(q, partition_size=8, checkpoint_dir=tmp_path)
    assert recomputed == first


def test_fraction_lower_bound_large_q_regime():
    q = parse_prime_power(2)
    report = surfaces.census_bound_report(q, surfaces.surface_census(q))
    assert report["S_lower_bound"]["large_q_regime"] is False
    assert "closed_form_lower" not in report["S_lower_bound"]

    big = parse_prime_power(2 ** 19)  # > 659^2
    census = surfaces.merge_partitions(big, [])
    bound = surfaces.fraction_lower_bound(big, census)
    assert bound["large_q_regime"] is True
    assert 0 < bound["closed_form_lower"] < 1


# ---------------------------------------------------------------------------
# 대규모 검증 (slow)
# ---------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("q", prime_powers_up_to(200))
def test_classifier_agrees_with_general_verdict_up_to_200(q):
    qp = parse_prime_power(q)
    disagreements = [
        (s.a, s.b) for s in surfaces.enumerate_ordinary_simple_surfaces(qp)
        if absolute_simplicity(surfaces.surface_poly(s), qp, ordinary=True)
        != surfaces.classify_surface(s).to_verdict()
    ]
    assert disagreements == []


@pytest.mark.slow
def test_splitting_identities_on_random_parameters():
    rng = random.Random(20240601)
    qs = prime_powers_up_to(1000)
    for _ in range(1000):
        a, b = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
        qp = parse_prime_power(rng.choice(qs))
        for d in surfaces.SPLIT_DEGREES:
            assert surfaces.quartic_discriminant_form(a, b, qp, d) == \
                surfaces.splitting_identity(a, b, qp, d), (a, b, qp.q, d)


@pytest.mark.slow
def test_surface_example_absolutely_simple_up_to_10000():
    """x^4 + x^3 + x^2 + qx + q^2 는 모든 q <= 10^4 에서 절대 단순 통상"""
    for q in prime_powers_up_to(10000):
        qp = parse_prime_power(q)
        assert surfaces.is_surface_weil(1, 1, qp), q
        assert surfaces.is_surface_ordinary(1, qp), q
        assert surfaces.is_surface_irreducible(1, 1, qp), q
        assert surfaces.classify_surface(SurfaceParams(a=1, b=1, q=qp)) == SurfaceClass.ABSOLUTELY_SIMPLE, q
        assert absolute_simplicity(chebgen.surface_example(qp), qp).is_absolutely_simple, q


@pytest.mark.slow
@pytest.mark.parametrize("q", [101, 1009, 10007])
def test_census_exceeds_lower_bounds(q):
    census = surfaces.surface_census(parse_prime_power(q), jobs=4, partition_size=64)
    checks = census.bound_report["checks"]
    assert checks["o_simple_exceeds_lower"]
    assert checks["o_abs_simple_exceeds_lower"]
    assert checks["non_abs_simple_nonzero_a_within"]
    assert census.bound_report["all_checks_pass"], {k: v for k, v in checks.items() if not v}
