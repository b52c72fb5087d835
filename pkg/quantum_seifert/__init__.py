"""Reshetikhin-Turaev invariants of Seifert fibered 3-manifolds and lens spaces."""

__version__ = "0.1.0"
