#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Weil 도구 서버 - CLI 하위 명령 하나를 실행하고 결과를 스트림에 기록
"""

import csv
import json
from typing import Any, Dict, Optional, TextIO, Tuple

from src.config import RunSettings
from src.models.reports import CommandRequest, OutputFormat, envelope
from src.servers.base_server import BaseToolServer
from src.services.surfaces import CSV_COLUMNS
from src.tools.weil_tools import WeilTools

EXIT_OK = 0
EXIT_FAILURE = 1


def dump_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


class WeilServer(BaseToolServer):
    """Weil 도구 서버"""

    def __init__(self, settings: Optional[RunSettings] = None):
        self.settings = settings or RunSettings()
        self.tools_handler = WeilTools(self.settings)
        super().__init__("WeilServer")

    def setup_tools(self):
        """하위 명령을 도구로 등록"""
        handler = self.tools_handler
        self.register_tool("check", handler.check_polynomial, "Weil 다항식 절대 단순성 판정")
        self.register_tool("surface-classify", handler.classify_surface, "곡면 (a, b) 분류")
        self.register_tool("surface-census", handler.surface_census, "단순 통상 곡면 census")
        self.register_tool("construct", handler.construct, "절대 단순 통상 Weil 다항식 구성")
        self.register_tool("bounds", handler.bounds, "상수, 임계값, 경계식")
        self.register_tool("count", handler.count, "기약 / 일차×기약 다항식 개수")
        self.register_tool("verify-tables", handler.verify_tables, "고정 표 재검증")
        self.register_tool("verify-reduction", handler.verify_reduction, "축약 보조정리 전수 검증")

    async def execute(self, request: CommandRequest, stream: TextIO) -> Tuple[int, Dict[str, Any]]:
        """
        요청 하나 실행

        JSON 형식이면 결과를 stream 에 쓴다. census 의 CSV 형식이면 헤더와 행을
        stream 에 쓰고 요약은 반환값으로만 넘긴다. 실패는 형식과 관계없이 JSON 오류 객체.

        Returns:
            (종료 코드, 스키마 키가 붙은 결과)
        """
        options = dict(request.options)
        csv_rows = (request.subcommand == "surface-census"
                    and request.output_format == OutputFormat.CSV)
        if csv_rows:
            csv.writer(stream, lineterminator='\n').writerow(CSV_COLUMNS)
            options["rows_sink"] = stream

        result = await self.execute_tool(request.subcommand, **options)
        payload = envelope(result)
        failed = result.get("status") != "success"

        if failed or request.output_format == OutputFormat.JSON:
            stream.write(dump_json(payload) + "\n")
        return (EXIT_FAILURE if failed else EXIT_OK), payload
