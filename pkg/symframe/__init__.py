"""symframe - Self-stresses and symmetry of bar-joint frameworks.

A library and command-line tool for finding (symmetric) realisations of
planar bar-joint frameworks with many or extensive self-stresses.
"""

__version__ = "0.1.0"
