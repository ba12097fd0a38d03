#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
도구 서버 기본 클래스
"""

from abc import ABC, abstractmethod
from typing import Any, Awaitable, Callable, Dict, List

from src.utils.logger import setup_logger
from src.utils.performance_monitor import performance_monitor


class BaseToolServer(ABC):
    """이름으로 도구를 등록하고 실행하는 서버 기본 클래스"""

    def __init__(self, name: str):
        self.name = name
        self.logger = setup_logger(f"{__name__}.{name}")
        self.tools: Dict[str, Dict[str, Any]] = {}
        self.setup_tools()

    @abstractmethod
    def setup_tools(self):
        """서버별 도구 설정 (하위 클래스에서 구현)"""

    def register_tool(self, name: str, tool_func: Callable[..., Awaitable[Dict[str, Any]]],
                      description: str = ""):
        """도구 등록"""
        self.tools[name] = {
            'function': tool_func,
            'description': description
        }
        self.logger.debug(f"도구 '{name}' 등록")

    async def execute_tool(self, tool_name: str, **kwargs) -> Dict[str, Any]:
        """
        도구 실행

        Raises:
            KeyError: 등록되지 않은 도구
        """
        if tool_name not in self.tools:
            raise KeyError(f"도구 '{tool_name}'을 찾을 수 없습니다.")

        tracking_id = performance_monitor.start_tracking(f"tool:{tool_name}")
        try:
            self.logger.info(f"도구 '{tool_name}' 실행 중...")
            result = await self.tools[tool_name]['function'](**kwargs)
            status = result.get("status", "success")
            performance_monitor.end_tracking(tracking_id, status, result.get("code"))
            self.logger.info(f"도구 '{tool_name}' 실행 완료 ({status})")
            return result
        except Exception as e:
            performance_monitor.end_tracking(tracking_id, "error", str(e))
            self.logger.error(f"도구 '{tool_name}' 실행 중 오류: {e}")
            raise

    def get_available_tools(self) -> List[Dict[str, str]]:
        """사용 가능한 도구 목록 반환"""
        return [
            {
                'name': name,
                'description': tool['description']
            }
            for name, tool in self.tools.items()
        ]
