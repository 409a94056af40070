"""p-adaptive DG 천수 방정식 solver 패키지"""
