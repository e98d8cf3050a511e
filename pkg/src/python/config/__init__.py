"""
Configuration Package

This package manages run configuration: simulation tolerances, optimizer
settings, output and logging options.
"""
