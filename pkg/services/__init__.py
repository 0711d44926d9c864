"""计算服务包"""
