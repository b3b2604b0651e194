"""Combinatorial types of rational tropical curves in complete planar fans."""

__version__ = "0.1.0"
