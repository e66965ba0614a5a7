"""Chern-Rund connection, torsion and holomorphic curvature of left-invariant
complex Finsler metrics on Lie groups, from structure constants and a complex
Minkowski norm."""

from ._finsler_lie import *  # noqa: F401,F403

__version__ = "0.1.0"
