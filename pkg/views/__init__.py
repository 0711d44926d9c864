"""视图包"""
