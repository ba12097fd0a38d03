#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
캐시 관리자 - 기저 다항식 탐색 결과 캐싱

1차: 프로세스 내 딕셔너리, 2차: 캐시 디렉토리의 텍스트 파일.
파일 형식은 n 하나당 한 줄 `n;g2 계수;g3 계수` (오름차순, 쉼표 구분).
"""

import os
import threading
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from src.utils.logger import setup_logger

logger = setup_logger(__name__)

CACHE_FILENAME = "base_polynomials.txt"


class CacheManager:
    """캐시 관리자"""

    def __init__(self, cache_dir: Optional[Path] = None):
        """
        캐시 관리자 초기화

        Args:
            cache_dir: 파일 캐시 디렉토리 (None 이면 메모리 캐시만 사용)
        """
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.local_cache: Dict[int, Tuple[str, str]] = {}
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()
        self._load_file()

    @property
    def cache_file(self) -> Optional[Path]:
        return self.cache_dir / CACHE_FILENAME if self.cache_dir is not None else None

    def _load_file(self):
        """파일 캐시를 메모리로 읽기 - 형식이 깨진 줄은 건너뜀"""
        path = self.cache_file
        if path is None or not path.exists():
            return
        with open(path, 'r', encoding='utf-8') as f:
            for lineno, line in enumerate(f, 1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(';')
                if len(parts) != 3 or not parts[0].isdigit():
                    logger.warning(f"캐시 파일 {path}:{lineno} 형식 오류, 무시")
                    continue
                self.local_cache[int(parts[0])] = (parts[1], parts[2])
        logger.debug(f"캐시 파일에서 {len(self.local_cache)}개 항목 로드")

    def get(self, n: int) -> Optional[Tuple[str, str]]:
        """캐시에서 (g2, g3) 계수 문자열 조회"""
        with self._lock:
            entry = self.local_cache.get(n)
            if entry is None:
                self.misses += 1
            else:
                self.hits += 1
            return entry

    def set(self, n: int, g2: str, g3: str) -> bool:
        """캐시에 저장 - 파일 캐시는 전체를 다시 쓰고 이름 변경"""
        with self._lock:
            self.local_cache[n] = (g2, g3)
            path = self.cache_file
            if path is None:
                return True
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                tmp = path.with_suffix('.tmp')
                with open(tmp, 'w', encoding='utf-8') as f:
                    for key in sorted(self.local_cache):
                        a, b = self.local_cache[key]
                        f.write(f"{key};{a};{b}\n")
                os.replace(tmp, path)
            except OSError as e:
                logger.warning(f"캐시 파일 저장 실패, 메모리 캐시만 사용: {e}")
                return False
            return True

    def clear(self):
        with self._lock:
            self.local_cache.clear()
            path = self.cache_file
            if path is not None and path.exists():
                path.unlink()

    def get_cache_stats(self) -> Dict[str, Any]:
        """캐시 통계 조회"""
        return {
            "local_cache_size": len(self.local_cache),
            "file_backed": self.cache_dir is not None,
            "cache_file": str(self.cache_file) if self.cache_file else None,
            "hits": self.hits,
            "misses": self.misses,
            "cached_degrees": sorted(self.local_cache),
        }
