"""
Grid verification of the Main Theorem.
"""

from .grid_runner import MainTheoremVerifier, cells_for, default_grid, evaluate_cell

__all__ = ["MainTheoremVerifier", "cells_for", "default_grid", "evaluate_cell"]
