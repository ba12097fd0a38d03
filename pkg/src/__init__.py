# Weil 다항식 / 절대 단순 통상 아벨 다양체 계산 패키지
