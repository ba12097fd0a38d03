# 도구 서버 모듈
