# CLI 도구 모듈
