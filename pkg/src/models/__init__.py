# 데이터 모델 모듈
