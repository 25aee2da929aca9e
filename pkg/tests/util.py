"""Shared brute-force oracles, independent of the library's enumerators.

Everything here recomputes expected values the dumb way: filter full
cartesian products, try every candidate table.  Tests freeze library
outputs only after these oracles confirm them.
"""

from __future__ import annotations

import itertools

from anodyne.fincat import FinMap, FinSet, Square, compose
from anodyne.lattice import FiniteLattice


def brute_simplex_points(lat: FiniteLattice, n: int) -> list[tuple[int, ...]]:
    """All weakly decreasing padded tuples, by full-product filtering."""
    out = []
    for coords in itertools.product(range(lat.size), repeat=n + 2):
        if coords[0] != lat.top or coords[-1] != lat.bottom:
            continue
        if all(lat.leq(coords[i + 1], coords[i]) for i in range(n + 1)):
            out.append(coords)
    return out


def brute_horn_points(lat: FiniteLattice, n: int, k: int) -> list[tuple[int, ...]]:
    return [
        c
        for c in brute_simplex_points(lat, n)
        if any(j != k and c[j] == c[j + 1] for j in range(n + 1))
    ]


def all_maps(max_size: int) -> list[FinMap]:
    """Every map between plain sets of size <= max_size."""
    out = []
    for ds in range(max_size + 1):
        for cs in range(max_size + 1):
            if ds > 0 and cs == 0:
                continue
            for table in itertools.product(range(cs), repeat=ds):
                out.append(FinMap(FinSet(ds), FinSet(cs), table))
    return out


def brute_fillers(square: Square) -> list[FinMap]:
    """All diagonals satisfying both triangles, by trying every table."""
    i, f = square.left, square.right
    out = []
    for table in itertools.product(range(f.dom.size), repeat=i.cod.size):
        d = FinMap(i.cod, f.dom, table)
        if compose(d, i) == square.top and compose(f, d) == square.bottom:
            out.append(d)
    return out


def brute_const_count(f: FinMap) -> int:
    """Codomain points t such that every domain point lands on t."""
    return sum(
        1
        for t in range(f.cod.size)
        if all(v == t for v in f.table)
    )
