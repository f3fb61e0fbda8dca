"""Core rigidity, symmetry and pure-condition algorithms."""
