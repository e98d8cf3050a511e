"""
Test suite for the QNP fabric package.

Unit tests cover single modules; integration tests run the optimizer and
the command line end to end.
"""
