"""Intuitionistic arithmetic workbench: Kripke forcing, realizability,
Gödel coding, proof checking and frame transformations."""
__version__ = "0.1.0"
