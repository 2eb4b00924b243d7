"""Orthohedral sets, piecewise isometries and their finiteness invariants."""
