"""Exact symbolic verification for Lie 2-algebras, 2-actions and comomentum maps."""

__version__ = "0.1.0"
