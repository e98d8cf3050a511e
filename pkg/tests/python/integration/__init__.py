"""
Integration tests for optimizer runs and the command line.

Acceptance runs are marked slow; skip them with -m "not slow".
"""
