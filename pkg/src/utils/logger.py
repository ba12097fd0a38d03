#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
로깅 설정 모듈
"""

import logging
import sys
from pathlib import Path
from typing import Optional

DEFAULT_LEVEL = "INFO"

# CLI 플래그로 한 번 지정하면 이후 생성되는 로거에도 적용
_configured_level: Optional[str] = None
_configured_file: Optional[str] = None


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """
    프로세스 전역 로그 설정 (CLI 진입 시 1회 호출)

    Args:
        level: 로그 레벨 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: 로그 파일 경로
    """
    global _configured_level, _configured_file
    _configured_level = level
    _configured_file = log_file

    # 이미 만들어진 로거의 레벨도 갱신
    log_level = getattr(logging, (level or DEFAULT_LEVEL).upper(), logging.INFO)
    for logger in logging.Logger.manager.loggerDict.values():
        if isinstance(logger, logging.Logger) and logger.name.startswith("src"):
            logger.setLevel(log_level)
            for handler in logger.handlers:
                handler.setLevel(log_level)
            if log_file:
                _attach_file_handler(logger, log_file, log_level)


def _attach_file_handler(logger: logging.Logger, log_file: str, log_level: int) -> None:
    """파일 핸들러 추가 (중복 방지)"""
    log_path = Path(log_file)
    for handler in logger.handlers:
        if isinstance(handler, logging.FileHandler) and Path(handler.baseFilename) == log_path.resolve():
            return

    # 로그 디렉토리 생성
    log_path.parent.mkdir(parents=True, exist_ok=True)

    file_handler = logging.FileHandler(log_file, encoding='utf-8')
    file_handler.setLevel(log_level)
    file_handler.setFormatter(_formatter())
    logger.addHandler(file_handler)


def _formatter() -> logging.Formatter:
    return logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


def setup_logger(
    name: str,
    level: Optional[str] = None,
    log_file: Optional[str] = None
) -> logging.Logger:
    """
    로거 설정

    표준 출력은 CSV/JSON 결과 전용이므로 로그는 stderr로 보낸다.

    Args:
        name: 로거 이름
        level: 로그 레벨 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: 로그 파일 경로

    Returns:
        설정된 로거 인스턴스
    """

    # 로그 레벨 설정
    if level is None:
        level = _configured_level or DEFAULT_LEVEL
    if log_file is None:
        log_file = _configured_file

    log_level = getattr(logging, level.upper(), logging.INFO)

    # 로거 생성
    logger = logging.getLogger(name)
    logger.setLevel(log_level)
    logger.propagate = False

    # 이미 핸들러가 있다면 중복 방지
    if logger.handlers:
        return logger

    # 콘솔 핸들러
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(_formatter())
    logger.addHandler(console_handler)

    # 파일 핸들러 (선택사항)
    if log_file:
        _attach_file_handler(logger, log_file, log_level)

    return logger
