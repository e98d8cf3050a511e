"""
Monitoring Package

In-process Prometheus metrics for simulations and optimizer runs.
"""
