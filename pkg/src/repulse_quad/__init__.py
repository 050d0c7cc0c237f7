"""Quadrature nodes from repulsive Gibbs measures."""

__version__ = "0.1.0"
