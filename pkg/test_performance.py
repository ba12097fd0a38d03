#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
성능 / 인프라 테스트 - 성능 모니터, 워커 풀, 기저 다항식 캐시
"""

import asyncio
import json
import sys
from pathlib import Path

import pytest

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.utils.async_worker import WorkerPool, WorkerType, run_partitioned  # noqa: E402
from src.utils.cache_manager import CACHE_FILENAME, CacheManager  # noqa: E402
from src.utils.performance_monitor import PerformanceMonitor, performance_monitor, track_performance  # noqa: E402


def square(x: int) -> int:
    return x * x


# ---------------------------------------------------------------------------
# 성능 모니터
# ---------------------------------------------------------------------------

def test_performance_monitor_tracking(tmp_path):
    monitor = PerformanceMonitor(max_history=3)
    for status in ("success", "success", "error", "success"):
        tracking_id = monitor.start_tracking("census")
        monitor.end_tracking(tracking_id, status)
    stats = monitor.get_operation_performance("census")
    assert stats["count"] == 3
    assert stats["errors"] == 1
    assert stats["max_duration"] >= stats["avg_duration"] >= 0

    assert monitor.get_operation_performance("missing")["count"] == 0
    # 알 수 없는 ID 는 무시
    monitor.end_tracking("nope_1")

    pending = monitor.start_tracking("construct")
    assert monitor.get_performance_summary()["active_operations"] == 1
    monitor.end_tracking(pending)
    assert set(monitor.get_performance_summary()["operations"]) == {"census", "construct"}

    assert monitor.get_slow_operations(threshold=3600) == []
    assert len(monitor.get_slow_operations(threshold=-1)) == 4

    path = tmp_path / "metrics.json"
    monitor.export_metrics(str(path))
    exported = json.loads(path.read_text(encoding="utf-8"))
    assert exported["summary"]["operations"]["census"]["count"] == 3

    monitor.reset()
    assert monitor.get_performance_summary() == {"operations": {}, "active_operations": 0}


def test_track_performance_decorator():
    @track_performance("test.sync")
    def ok():
        return 1

    @track_performance("test.async")
    async def failing():
        raise RuntimeError("boom")

    assert ok() == 1
    with pytest.raises(RuntimeError):
        asyncio.run(failing())
    assert performance_monitor.get_operation_performance("test.sync")["count"] >= 1
    assert performance_monitor.get_operation_performance("test.async")["errors"] >= 1


# ---------------------------------------------------------------------------
# 워커 풀
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("worker_type", [WorkerType.THREAD, WorkerType.PROCESS])
def test_worker_pool_preserves_order(worker_type):
    with WorkerPool(max_workers=3, worker_type=worker_type) as pool:
        assert pool.map_sync(square, range(20)) == [i * i for i in range(20)]
        stats = pool.get_pool_stats()
    assert stats["completed_tasks"] == 20
    assert stats["worker_type"] == worker_type.value
    assert pool.executor is None


def test_single_worker_runs_inline():
    pool = WorkerPool(max_workers=1)
    assert pool.executor is None
    assert pool.map_sync(square, [3]) == [9]


@pytest.mark.parametrize("jobs", [1, 2, 4])
def test_run_partitioned(jobs):
    assert run_partitioned(square, range(10), jobs=jobs) == [i * i for i in range(10)]
    assert run_partitioned(square, [], jobs=jobs) == []


# ---------------------------------------------------------------------------
# 캐시
# ---------------------------------------------------------------------------

def test_cache_memory_only():
    cache = CacheManager()
    assert cache.get(12) is None
    assert cache.set(12, "1,1", "2,1")
    assert cache.get(12) == ("1,1", "2,1")
    stats = cache.get_cache_stats()
    assert stats["hits"] == 1 and stats["misses"] == 1
    assert stats["file_backed"] is False


def test_cache_file_round_trip(tmp_path):
    cache = CacheManager(tmp_path)
    cache.set(20, "1,0,1", "2,2,1")
    cache.set(19, "1,1,1", "1,2,1")
    lines = (tmp_path / CACHE_FILENAME).read_text(encoding="utf-8").splitlines()
    assert lines == ["19;1,1,1;1,2,1", "20;1,0,1;2,2,1"]

    reloaded = CacheManager(tmp_path)
    assert reloaded.get_cache_stats()["cached_degrees"] == [19, 20]
    assert reloaded.get(20) == ("1,0,1", "2,2,1")

    reloaded.clear()
    assert not (tmp_path / CACHE_FILENAME).exists()


def test_cache_skips_malformed_lines(tmp_path):
    (tmp_path / CACHE_FILENAME).write_text("garbage\n21;1,1;1,1\nx;1;1\n\n", encoding="utf-8")
    cache = CacheManager(tmp_path)
    assert cache.get_cache_stats()["cached_degrees"] == [21]
