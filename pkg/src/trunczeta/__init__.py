"""Subring and cocyclic-subring counts of Z[t]/(t^4) and their zeta factors."""

__version__ = "0.1.0"
