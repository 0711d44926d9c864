"""工具包"""
