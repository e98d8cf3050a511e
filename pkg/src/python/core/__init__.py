"""
Core Package

Logging setup and the exception hierarchy shared by all packages.
"""
