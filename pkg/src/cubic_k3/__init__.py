"""Exact lattice arithmetic for special cubic fourfolds and twisted K3 surfaces."""

__version__ = "0.1.0"
