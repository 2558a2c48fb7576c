"""Exact combinatorial model of kappa-class pullbacks on M_{0,n}-bar.

Degree-d cycle classes modulo Type II strata are presented as set partitions
modulo four-term relations; kappa pullbacks are indexed by subsets.  The
modules here build both sides, the pairing between them, the forgetful-map
operators, and a suite that checks the structural theorems by exact rank.
"""

from m0nkappa.errors import InputError

__version__ = "0.1.0"

__all__ = ["InputError", "__version__"]
