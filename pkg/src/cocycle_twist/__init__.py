"""Exact computations for cocycle twists of Nichols algebras and their Heisenberg-type doubles."""

__version__ = "0.1.0"
