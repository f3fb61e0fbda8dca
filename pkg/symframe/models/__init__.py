"""Data models for graphs, frameworks, symmetry and polynomials."""
