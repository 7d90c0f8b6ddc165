"""Exact-arithmetic engine for the combinatorial invariants of spherical
varieties and the unramified L-factor, Plancherel-density and finite
multiplicity formulas attached to them.

Everything is computed over exact integers and rationals; L-factors are
canonical rational functions in a formal variable ``u`` (standing for
``q**(-1/2)``) and torus coordinates.
"""

__version__ = "0.1.0"
