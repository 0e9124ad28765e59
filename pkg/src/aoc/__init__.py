"""Exact calculus for boundary invariants, bifoliated planes, drift and
crossing holonomy of partial and Birkhoff sections of Anosov flows."""

from aoc.verdict import AocError, Verdict

__version__ = "0.1.0"
__all__ = ["AocError", "Verdict", "__version__"]
