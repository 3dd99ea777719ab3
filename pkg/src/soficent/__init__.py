"""Desk-scale sofic and amenable entropy estimates for symbolic systems."""

__version__ = "0.1.0"
