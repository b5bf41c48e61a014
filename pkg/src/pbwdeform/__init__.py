"""Exact computations with deformed smash product algebras."""
