"""Interval decomposition of a filtered chain complex.

Per homological degree, generators are visited by nondecreasing filtration
level (ties by id) and their boundary columns are reduced against the
pivots recorded so far.  A column that dies yields an essential candidate;
a surviving column is paired with the generator sitting at its entry of
maximal filtration level (ties by maximal id), the gap between the two
levels being the bar's lifetime.  Pairs whose two ends share a level carry
no homology; they are cancelled from the barcode but kept in the pairing
as diagnostics.

The resulting barcode is independent of input order and of the tie-break;
the pairing and its cycle witnesses are not.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from .complexes import FilteredChainComplex, Generator
from .errors import UsageError
from .linalg import ColumnReducer, SparseColumn

INF = math.inf

Lifetime = Union[int, float]  # positive int, or math.inf


@dataclass(frozen=True)
class BarEntry:
    degree: int
    birth: int
    lifetime: Lifetime

    def __post_init__(self):
        ok = self.lifetime == INF or (isinstance(self.lifetime, int) and self.lifetime >= 1)
        if not ok:
            raise UsageError(f"lifetime must be a positive integer or inf, got {self.lifetime!r}")

    @property
    def is_essential(self) -> bool:
        return self.lifetime == INF

    def sort_key(self):
        return (self.degree, self.birth, self.lifetime == INF,
                0 if self.lifetime == INF else self.lifetime)


class Barcode:
    """Multiset of bars with positive multiplicities."""

    def __init__(self, counts=None):
        self._counts: Counter = Counter()
        if counts:
            for entry, mult in dict(counts).items():
                if not isinstance(entry, BarEntry):
                    raise UsageError(f"expected BarEntry, got {entry!r}")
                if mult < 0:
                    raise UsageError(f"negative multiplicity for {entry}")
                if mult:
                    self._counts[entry] = mult

    def entries(self) -> list[tuple[BarEntry, int]]:
        return sorted(self._counts.items(), key=lambda kv: kv[0].sort_key())

    def count(self, entry: BarEntry) -> int:
        return self._counts.get(entry, 0)

    def degrees(self) -> list[int]:
        return sorted({e.degree for e in self._counts})

    def essential_count(self, degree: int) -> int:
        return sum(m for e, m in self._counts.items()
                   if e.degree == degree and e.is_essential)

    def max_finite_lifetime(self) -> int:
        finite = [e.lifetime for e in self._counts if not e.is_essential]
        return max(finite) if finite else 0

    def min_birth(self) -> Optional[int]:
        return min((e.birth for e in self._counts), default=None)

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Barcode) and self._counts == other._counts

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({e.degree},{e.birth},{'inf' if e.is_essential else e.lifetime})x{m}"
            for e, m in self.entries()
        )
        return f"Barcode[{inner}]"


@dataclass(frozen=True)
class Pair:
    """A reduction pair: d(death) hits `birth` after a lifetime-level gap.

    `cycle` is the reduced boundary of `death` (unit coefficient at the
    birth generator's row), written over the generators one degree below.
    """
    death: Generator
    birth: Generator
    cycle: SparseColumn
    lifetime: int

    @property
    def cancelled(self) -> bool:
        # equal-level pairs contribute no homology
        return self.lifetime == 0


@dataclass
class Pairing:
    essentials: list  # list[Generator]
    pairs: list       # list[Pair]


def decompose(c: FilteredChainComplex) -> tuple[Pairing, Barcode]:
    """Reduce the complex into essential generators and pairs, plus its barcode."""
    c.ensure_valid()
    field = c.field
    survivors: dict[tuple[int, int], Generator] = {}
    for n in c.degrees():
        for g in c.gens(n):
            survivors[(n, g.gid)] = g

    pairs: list[Pair] = []
    for n in c.degrees():
        targets = c.gens(n - 1)
        if not targets:
            continue
        # rows reindexed by (filtration, gid) so the pivot is simply the
        # last entry of a reduced column
        order = sorted(range(len(targets)), key=lambda i: (targets[i].filtration, i))
        pos_of = {gid: k for k, gid in enumerate(order)}
        reducer = ColumnReducer(field)
        for w in sorted(c.gens(n), key=lambda g: (g.filtration, g.gid)):
            col = sorted(((pos_of[r], v) for r, v in c.column(n, w.gid)))
            col = reducer.reduce(col)
            if not col:
                continue  # w stays an essential candidate
            pivot_pos = reducer.add_pivot(col)
            birth = targets[order[pivot_pos]]
            stored = reducer.pivots[pivot_pos]
            cycle = sorted(((order[p], v) for p, v in stored))
            del survivors[(n, w.gid)]
            del survivors[(n - 1, birth.gid)]
            pairs.append(Pair(w, birth, cycle, w.filtration - birth.filtration))

    counts: Counter = Counter()
    for g in survivors.values():
        counts[BarEntry(g.degree, g.filtration, INF)] += 1
    for pair in pairs:
        if not pair.cancelled:
            counts[BarEntry(pair.birth.degree, pair.birth.filtration, pair.lifetime)] += 1
    essentials = sorted(survivors.values(), key=lambda g: (g.degree, g.gid))
    return Pairing(essentials, pairs), Barcode(counts)


def betti(b: Barcode, n: int, i: int, j: int) -> int:
    """Persistent Betti number: bars of degree n alive over [i, j]."""
    if i > j:
        raise UsageError(f"betti requires i <= j, got i={i}, j={j}")
    total = 0
    for entry, mult in b.entries():
        if entry.degree != n or entry.birth > i:
            continue
        if entry.is_essential or entry.birth + entry.lifetime > j:
            total += mult
    return total


def multiplicity(b: Barcode, n: int, i: int, j: Lifetime) -> int:
    """Bars of degree n born at i and dying at j (j = inf for essentials)."""
    if j == INF:
        return b.count(BarEntry(n, i, INF))
    if i >= j:
        raise UsageError(f"multiplicity requires i < j, got i={i}, j={j}")
    return b.count(BarEntry(n, i, j - i))
