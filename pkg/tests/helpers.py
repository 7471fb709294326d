"""Model complexes shared across test modules."""
from __future__ import annotations

from spectra_persist.complexes import FilteredChainComplex
from spectra_persist.fields import RationalField

Q = RationalField()


def model_pair(field, n=0, s=2, m=3) -> FilteredChainComplex:
    """Two generators w -> v with a lifetime-m level gap (one finite bar)."""
    return FilteredChainComplex.from_named(
        field, [("v", n, s), ("w", n + 1, s + m)], {"w": [(1, "v")]})


def model_essential(field, n=0, s=0) -> FilteredChainComplex:
    """A single cycle generator (one infinite bar)."""
    return FilteredChainComplex.from_named(field, [("v", n, s)])


def triangle(field=Q) -> FilteredChainComplex:
    """Filtered triangle boundary: vertices at level 0, two edges at 1, one at 2."""
    return FilteredChainComplex.from_named(
        field,
        [("v0", 0, 0), ("v1", 0, 0), ("v2", 0, 0),
         ("e01", 1, 1), ("e12", 1, 1), ("e02", 1, 2)],
        {"e01": [(-1, "v0"), (1, "v1")],
         "e12": [(-1, "v1"), (1, "v2")],
         "e02": [(-1, "v0"), (1, "v2")]})


def full_triangle(field=Q) -> FilteredChainComplex:
    """Triangle boundary complex, all six cells at level 0."""
    return FilteredChainComplex.from_named(
        field,
        [("v0", 0, 0), ("v1", 0, 0), ("v2", 0, 0),
         ("e01", 1, 0), ("e12", 1, 0), ("e02", 1, 0)],
        {"e01": [(-1, "v0"), (1, "v1")],
         "e12": [(-1, "v1"), (1, "v2")],
         "e02": [(-1, "v0"), (1, "v2")]})
