"""Exact computations on the Heisenberg and Clifford Fock spaces, tau functions and KP."""

__version__ = "0.1.0"
