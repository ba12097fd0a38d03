#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
워커 풀 - 고정 분할 열거(census, 축약 검증, 기저 다항식 탐색)의 병렬 실행

결과는 항상 입력 순서대로 반환되므로 워커 수와 무관하게 병합 결과가 같다.
"""

import multiprocessing
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional

from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class WorkerType(Enum):
    """워커 타입"""
    THREAD = "thread"
    PROCESS = "process"


class WorkerPool:
    """스레드/프로세스 워커 풀"""

    def __init__(self,
                 max_workers: Optional[int] = None,
                 worker_type: WorkerType = WorkerType.PROCESS):
        """
        워커 풀 초기화

        Args:
            max_workers: 최대 워커 수 (기본값: CPU 수)
            worker_type: 워커 타입
        """
        self.max_workers = max_workers or multiprocessing.cpu_count()
        self.worker_type = worker_type
        self.completed = 0
        self.executor: Optional[Executor] = None
        if self.max_workers > 1:
            if worker_type == WorkerType.THREAD:
                self.executor = ThreadPoolExecutor(max_workers=self.max_workers)
            else:
                self.executor = ProcessPoolExecutor(max_workers=self.max_workers)

    def __enter__(self) -> 'WorkerPool':
        return self

    def __exit__(self, exc_type, exc, tb):
        self.cleanup()

    def map_sync(self, func: Callable, iterable: Iterable[Any]) -> List[Any]:
        """동기 맵핑 (입력 순서 보존) - 워커가 1개면 현재 스레드에서 실행"""
        items = list(iterable)
        if self.executor is None:
            results = [func(item) for item in items]
        else:
            results = list(self.executor.map(func, items))
        self.completed += len(results)
        return results

    def get_pool_stats(self) -> Dict[str, Any]:
        """풀 통계 조회"""
        return {
            'max_workers': self.max_workers,
            'worker_type': self.worker_type.value,
            'completed_tasks': self.completed,
        }

    def cleanup(self):
        """리소스 정리"""
        if self.executor:
            self.executor.shutdown(wait=True)
            self.executor = None


def run_partitioned(func: Callable,
                    partitions: Iterable[Any],
                    jobs: int = 1,
                    worker_type: WorkerType = WorkerType.PROCESS) -> List[Any]:
    """
    고정 분할을 워커 풀에서 실행하고 분할 순서대로 결과 반환

    Args:
        func: 모듈 최상위 함수 (프로세스 풀에서 pickle 가능해야 함)
        partitions: 분할 목록
        jobs: 워커 수 (1이면 풀 없이 순차 실행)
        worker_type: THREAD 또는 PROCESS
    """
    items = list(partitions)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.info(f"{len(items)}개 분할을 {jobs}개 워커({worker_type.value})로 실행")
    with WorkerPool(max_workers=jobs, worker_type=worker_type) as pool:
        results = pool.map_sync(func, items)
        logger.debug(f"워커 풀 통계: {pool.get_pool_stats()}")
        return results
