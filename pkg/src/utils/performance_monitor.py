#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
성능 모니터링 - 연산별 소요 시간 추적
"""

import asyncio
import functools
import itertools
import json
import threading
import time
from collections import defaultdict, deque
from datetime import datetime
from typing import Any, Dict, List, Optional


class PerformanceMonitor:
    """성능 모니터링 클래스"""

    def __init__(self, max_history: int = 1000):
        """
        성능 모니터 초기화

        Args:
            max_history: 연산별 최대 히스토리 저장 개수
        """
        self.max_history = max_history
        self.metrics = defaultdict(lambda: deque(maxlen=max_history))
        self.active_operations: Dict[str, Dict[str, Any]] = {}
        self._lock = threading.Lock()
        self._ids = itertools.count(1)

    def start_tracking(self, operation: str) -> str:
        """연산 추적 시작 - 추적 ID 반환"""
        tracking_id = f"{operation}_{next(self._ids)}"
        with self._lock:
            self.active_operations[tracking_id] = {
                'operation': operation,
                'start_time': time.perf_counter(),
                'start_datetime': datetime.now().isoformat()
            }
        return tracking_id

    def end_tracking(self, tracking_id: str, status: str = "success", error: Optional[str] = None):
        """연산 추적 종료"""
        with self._lock:
            info = self.active_operations.pop(tracking_id, None)
            if info is None:
                return
            self.metrics[info['operation']].append({
                'duration': time.perf_counter() - info['start_time'],
                'start_time': info['start_datetime'],
                'status': status,
                'error': error
            })

    def get_operation_performance(self, operation: str) -> Dict[str, Any]:
        """특정 연산 통계"""
        with self._lock:
            records = list(self.metrics.get(operation, ()))
        if not records:
            return {'operation': operation, 'count': 0, 'total_duration': 0.0, 'max_duration': 0.0}

        durations = [r['duration'] for r in records]
        errors = sum(1 for r in records if r['status'] != 'success')
        return {
            'operation': operation,
            'count': len(records),
            'errors': errors,
            'total_duration': sum(durations),
            'avg_duration': sum(durations) / len(durations),
            'max_duration': max(durations)
        }

    def get_performance_summary(self) -> Dict[str, Any]:
        """전체 연산 요약"""
        with self._lock:
            names = sorted(self.metrics)
            active = len(self.active_operations)
        return {
            'operations': {name: self.get_operation_performance(name) for name in names},
            'active_operations': active
        }

    def get_slow_operations(self, threshold: float = 1.0) -> List[Dict[str, Any]]:
        """threshold 초 이상 걸린 호출"""
        with self._lock:
            slow = [
                dict(record, operation=name)
                for name, records in self.metrics.items()
                for record in records
                if record['duration'] > threshold
            ]
        return sorted(slow, key=lambda r: r['duration'], reverse=True)

    def reset(self):
        with self._lock:
            self.metrics.clear()
            self.active_operations.clear()

    def export_metrics(self, filepath: str):
        """메트릭 데이터 내보내기"""
        export_data = {
            'export_time': datetime.now().isoformat(),
            'summary': self.get_performance_summary()
        }
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(export_data, f, indent=2, ensure_ascii=False)


# 전역 성능 모니터 인스턴스
performance_monitor = PerformanceMonitor()


def track_performance(operation: str):
    """성능 추적 데코레이터 (동기/비동기 함수 모두 지원)"""
    def decorator(func):
        if asyncio.iscoroutinefunction(func):
            @functools.wraps(func)
            async def async_wrapper(*args, **kwargs):
                tracking_id = performance_monitor.start_tracking(operation)
                try:
                    result = await func(*args, **kwargs)
                    performance_monitor.end_tracking(tracking_id, "success")
                    return result
                except Exception as e:
                    performance_monitor.end_tracking(tracking_id, "error", str(e))
                    raise
            return async_wrapper

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            tracking_id = performance_monitor.start_tracking(operation)
            try:
                result = func(*args, **kwargs)
                performance_monitor.end_tracking(tracking_id, "success")
                return result
            except Exception as e:
                performance_monitor.end_tracking(tracking_id, "error", str(e))
                raise
        return wrapper
    return decorator
