"""Simulation and verification toolkit for the circular beta-ensemble."""

__version__ = "0.1.0"
