"""Hypercube-variant constructions, finite lemma checks and crossing-number tools."""

__version__ = "0.1.0"
