"""fareyflats: exact combinatorics of Farey graphs, flat orbifold
intersection counts, piece projections, and lattice flats in products.

The package is pure Python on top of the standard library; every quantity
is an integer or a Fraction, never a float.
"""

from .slopes import INFINITY, Slope, adjacent, det, distance, neighbors

__all__ = [
    "INFINITY",
    "Slope",
    "adjacent",
    "det",
    "distance",
    "neighbors",
]

__version__ = "0.1.0"
