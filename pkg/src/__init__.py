"""
Eisenstein series congruences: predictions, q-expansion searches and cohomology.
"""

__version__ = "0.1.0"
