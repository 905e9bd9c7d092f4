"""Modular Lie algebras of types A and C and their reduced enveloping algebras."""

__version__ = "0.1.0"
