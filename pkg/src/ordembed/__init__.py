"""Exact workbench for Z-orders and embeddings into semisimple algebras."""

__version__ = "0.1.0"
