"""Unit tests for simulator, gates, fabrics, symmetry, Hamiltonians, gradients and VQE."""
