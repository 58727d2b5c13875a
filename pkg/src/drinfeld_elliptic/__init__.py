"""Elliptic points of Drinfeld modular groups GL2(A), computed exactly."""
