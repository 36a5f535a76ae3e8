"""FusionForge: fusion systems, Goursat data and biset verification on small permutation groups."""

__version__ = "0.1.0"
