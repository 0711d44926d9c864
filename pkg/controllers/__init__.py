"""控制器包"""
