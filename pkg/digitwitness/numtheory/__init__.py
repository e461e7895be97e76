"""Exact number-theoretic constructions."""
