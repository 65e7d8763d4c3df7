"""Quasi 5-connected graphs: connectivity, contractible subgraphs and brute-force checks."""

__version__ = "0.1.0"
