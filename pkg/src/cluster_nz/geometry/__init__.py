"""Gluing equations, dilogarithms, surface and Dynkin examples."""
