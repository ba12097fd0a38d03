#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
weilforge 명령줄 엔트리포인트

    python -m src.main construct --n 3 --q 2
    python -m src.main surface classify --q 3 --a 0 --b 1
    python -m src.main --format csv surface census --q 101 --summary summary.json

다항식 계수는 항상 오름차순 쉼표 구분이며 최고차 계수를 명시한다 (x^2 + 1 → "1,0,1").
"""

import asyncio
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
from rich.console import Console
from rich.table import Table

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.config import LOG_LEVELS, RunSettings  # noqa: E402
from src.models.reports import CommandRequest, OutputFormat  # noqa: E402
from src.servers.weil_server import EXIT_OK, WeilServer, dump_json  # noqa: E402
from src.utils.logger import configure_logging, setup_logger  # noqa: E402
from src.utils.performance_monitor import performance_monitor  # noqa: E402

logger = setup_logger(__name__)


def _run(ctx: click.Context, subcommand: str, options: Dict[str, Any],
         summary: Optional[str] = None, **overrides) -> None:
    """
    하위 명령 하나를 서버로 실행하고 종료 코드로 끝낸다

    Args:
        summary: census CSV 출력일 때 JSON 요약 경로 (없으면 stderr)
        overrides: RunSettings 필드 덮어쓰기
    """
    obj = ctx.obj
    output_format = OutputFormat(obj["output_format"])
    if output_format == OutputFormat.CSV and subcommand != "surface-census":
        raise click.UsageError("--format csv 는 surface census 에서만 사용할 수 있습니다.")

    try:
        settings = RunSettings(
            cache_dir=obj["cache_dir"],
            jobs=obj["jobs"],
            log_level=obj["log_level"],
            log_file=obj["log_file"],
            **{k: v for k, v in overrides.items() if v is not None},
        )
    except ValueError as e:
        raise click.UsageError(str(e))

    request = CommandRequest(
        subcommand=subcommand,
        options={k: v for k, v in options.items() if v is not None},
        output=obj["output"],
        output_format=output_format,
        jobs=settings.jobs,
        cache_dir=str(settings.cache_dir) if settings.cache_dir else None,
    )
    server = WeilServer(settings)
    with click.open_file(request.output or "-", "w", encoding="utf-8") as stream:
        code, payload = asyncio.run(server.execute(request, stream))
        if code == EXIT_OK and output_format == OutputFormat.TEXT:
            render_text(subcommand, payload, stream)

    if code == EXIT_OK and output_format == OutputFormat.CSV:
        summary_text = dump_json(payload) + "\n"
        if summary:
            Path(summary).write_text(summary_text, encoding="utf-8")
        else:
            click.echo(summary_text, err=True, nl=False)

    logger.debug(f"성능 요약: {performance_monitor.get_performance_summary()}")
    ctx.exit(code)


# ---------------------------------------------------------------------------
# text 출력
# ---------------------------------------------------------------------------

def render_text(subcommand: str, payload: Dict[str, Any], stream) -> None:
    """rich 표로 출력"""
    console = Console(file=stream, width=160, color_system=None)
    if subcommand == "verify-tables":
        _render_tables(payload, console)
        return
    table = Table(title=subcommand, show_header=True)
    table.add_column("key")
    table.add_column("value")
    for key, value in payload.items():
        text = value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)
        table.add_row(str(key), text)
    console.print(table)


def _render_tables(payload: Dict[str, Any], console: Console) -> None:
    first = Table(title="good polynomials, 3 <= n <= 9", show_header=True)
    for column in ("n", "q", "g", "cond1", "cond2", "cond3", "cond4", "cond5", "ok"):
        first.add_column(column)
    for row in payload["small_degrees"]:
        first.add_row(*(str(row[c]) for c in ("n", "q", "g", "cond1", "cond2", "cond3", "cond4", "cond5", "ok")))
    console.print(first)

    columns = ("n", "g2", "g3", "g2_irreducible", "g3_linear_times_irreducible",
               "g3_nonzero_constant", "g2_top_match", "g3_top_match", "ok")
    second = Table(title="mod 2 / mod 3 pairs, 10 <= n <= 18", show_header=True)
    for column in columns:
        second.add_column(column)
    for row in payload["mod_pairs"]:
        second.add_row(*(str(row[c]) for c in columns))
    console.print(second)
    console.print(f"all_pass: {payload['all_pass']}")


def _parse_primes(ctx, param, value: str) -> List[int]:
    try:
        primes = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("쉼표로 구분한 정수 목록이어야 합니다 (예: 2,3).")
    if not primes:
        raise click.BadParameter("소수가 하나 이상 필요합니다.")
    return primes


# ---------------------------------------------------------------------------
# 명령
# ---------------------------------------------------------------------------

@click.group()
@click.option("--log-level", default="WARNING", type=click.Choice(LOG_LEVELS, case_sensitive=False),
              show_default=True, help="로그 레벨 (stderr)")
@click.option("--log-file", default=None, help="로그 파일 경로")
@click.option("--jobs", default=1, type=click.IntRange(1, 256), show_default=True, help="병렬 워커 수")
@click.option("--cache", "cache_dir", default=None, type=click.Path(file_okay=False),
              help="기저 다항식 탐색 결과 캐시 디렉토리")
@click.option("--format", "output_format", default="json", type=click.Choice([f.value for f in OutputFormat]),
              show_default=True, help="출력 형식")
@click.option("--output", default=None, type=click.Path(dir_okay=False), help="출력 파일 (기본 stdout)")
@click.pass_context
def cli(ctx, log_level, log_file, jobs, cache_dir, output_format, output):
    """Weil 다항식과 절대 단순 통상 아벨 다양체 도구. 계수는 오름차순 (x^0 부터)."""
    configure_logging(log_level.upper(), log_file)
    ctx.obj = {
        "log_level": log_level.upper(),
        "log_file": log_file,
        "jobs": jobs,
        "cache_dir": cache_dir,
        "output_format": output_format,
        "output": output,
    }


@cli.command()
@click.option("--q", "q", required=True, type=int, help="유한체 크기 (소수 거듭제곱)")
@click.option("--poly", required=True, help="오름차순 계수 c0,...,c2n (최고차 계수 1)")
@click.option("--real", is_flag=True, help="poly 를 실 동반 다항식 g (차수 n) 로 해석하고 다섯 가설 보고")
@click.pass_context
def check(ctx, q, poly, real):
    """절대 단순성 판정."""
    _run(ctx, "check", {"q": q, "poly": poly, "real": real})


@cli.group()
def surface():
    """2차원 (아벨 곡면) 명령."""


@surface.command("classify")
@click.option("--q", "q", required=True, type=int)
@click.option("--a", "a", required=True, type=int)
@click.option("--b", "b", required=True, type=int)
@click.pass_context
def surface_classify(ctx, q, a, b):
    """x^4 + a x^3 + b x^2 + a q x + q^2 분류."""
    _run(ctx, "surface-classify", {"q": q, "a": a, "b": b})


@surface.command("census")
@click.option("--q", "q", required=True, type=int)
@click.option("--q-max", "q_max", default=None, type=int, help="[q, q-max] 의 모든 소수 거듭제곱")
@click.option("--checkpoint", default=None, type=click.Path(file_okay=False), help="분할 결과 디렉토리 (재개)")
@click.option("--summary", default=None, type=click.Path(dir_okay=False), help="CSV 출력 시 JSON 요약 경로")
@click.option("--partition-size", default=None, type=click.IntRange(1, None), help="분할당 a 값 개수")
@click.pass_context
def surface_census(ctx, q, q_max, checkpoint, summary, partition_size):
    """단순 통상 곡면 census (CSV 행 + JSON 요약, 경계식 비교 포함)."""
    _run(ctx, "surface-census", {"q": q, "q_max": q_max}, summary=summary,
         checkpoint_dir=checkpoint, partition_size=partition_size)


@cli.command()
@click.option("--n", "n", required=True, type=int, help="차원 (>= 2)")
@click.option("--q", "q", required=True, type=int)
@click.pass_context
def construct(ctx, n, q):
    """절대 단순 통상 Weil 다항식 구성."""
    _run(ctx, "construct", {"n": n, "q": q})


@cli.command()
@click.option("--n", "n", required=True, type=int)
@click.option("--epsilon", required=True, help="ε (예: 1, 1/10, 0.05)")
@click.option("--q", "q", default=None, type=int, help="경계값을 평가할 q")
@click.option("--precision-digits", default=None, type=click.IntRange(1, 200), help="구간 폭 10^-k")
@click.pass_context
def bounds(ctx, n, epsilon, q, precision_digits):
    """상수 구간, (k, m, M) 임계값, 경계식."""
    _run(ctx, "bounds", {"n": n, "epsilon": epsilon, "q": q}, precision_digits=precision_digits)


@cli.command()
@click.option("--p", "p", required=True, type=int)
@click.option("--n", "n", required=True, type=int)
@click.pass_context
def count(ctx, p, n):
    """F_p 위 기약 / 일차×기약 모닉 다항식 개수."""
    _run(ctx, "count", {"p": p, "n": n})


@cli.command("verify-tables")
@click.pass_context
def verify_tables(ctx):
    """고정 표 재검증."""
    _run(ctx, "verify-tables", {})


@cli.command("verify-reduction")
@click.option("--n", "n", required=True, type=int)
@click.option("--primes", required=True, callback=_parse_primes, help="쉼표 구분 소수 목록 (예: 2,3)")
@click.pass_context
def verify_reduction(ctx, n, primes):
    """축약 보조정리 전수 검증."""
    _run(ctx, "verify-reduction", {"n": n, "primes": primes})


def main(argv: Optional[List[str]] = None) -> None:
    cli.main(args=argv, prog_name="weilforge")


if __name__ == "__main__":
    main()
