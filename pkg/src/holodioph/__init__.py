"""Diophantine definability toolkit over the rational function field Q(x)."""
