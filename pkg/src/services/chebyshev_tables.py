#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
작은 차수용 고정 다항식 표

SMALL_GOOD: 3 <= n <= 9 의 좋은 실 동반 다항식 g
MOD_2_AND_3: 10 <= n <= 18 의 (g2, g3) 쌍 (F_2, F_3 위 모닉)

계수는 오름차순 쉼표 구분 문자열. 로드 시 chebgen 이 조건을 다시 검증한다.
"""

from typing import Dict, Tuple

# x^3 - 5x + 1, ..., x^9 - 18x^7 + 108x^5 + x^4 - 240x^3 - 9x^2 + 147x + 1
SMALL_GOOD: Dict[int, str] = {
    3: "1,-5,0,1",
    4: "1,-1,-6,0,1",
    5: "1,20,1,-10,0,1",
    6: "-1,1,34,0,-12,0,1",
    7: "1,-57,-2,56,0,-14,0,1",
    8: "1,0,-129,1,81,0,-16,0,1",
    9: "1,147,-9,-240,1,108,0,-18,0,1",
}

# 계수는 정수 대표값 (-1 은 F_3 에서 2)
MOD_2_AND_3: Dict[int, Tuple[str, str]] = {
    10: ("1,0,0,1,0,0,0,0,0,0,1",
         "1,1,1,0,-1,0,-1,0,1,0,1"),
    11: ("1,0,1,0,0,0,0,0,0,0,0,1",
         "1,0,0,0,0,-1,0,-1,0,-1,0,1"),
    12: ("1,0,0,1,0,0,0,0,0,0,0,0,1",
         "1,1,-1,0,0,0,1,0,0,0,0,0,1"),
    13: ("1,1,1,0,0,1,0,0,0,0,0,0,0,1",
         "1,0,1,0,0,0,0,0,0,-1,0,1,0,1"),
    14: ("1,0,0,0,0,1,0,0,0,0,0,0,0,0,1",
         "1,1,1,0,0,0,0,0,0,0,-1,0,-1,0,1"),
    15: ("1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,1",
         "1,1,0,0,0,0,0,0,0,-1,0,0,0,0,0,1"),
    16: ("1,1,1,0,0,0,1,0,0,0,0,0,0,0,0,0,1",
         "-1,1,1,0,0,0,0,0,0,0,1,0,-1,0,1,0,1"),
    17: ("1,0,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,1",
         "1,0,1,1,0,0,0,0,0,0,0,1,0,-1,0,-1,0,1"),
    18: ("1,0,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1",
         "-1,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1"),
}
